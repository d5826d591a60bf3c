#pragma once

#include <sselbp/imgio.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace sselbp::synth {

/// Linear intensity ramp with a random orientation and slope, quantized to 8 bits.
GrayImage gradient_texture(std::size_t size, std::uint64_t seed);

/// Independent uniform 8-bit noise per pixel.
GrayImage noise_texture(std::size_t size, std::uint64_t seed);

/// Writes <root>/gradient/NNN.pgm and <root>/noise/NNN.pgm, `per_class`
/// images each, `size` x `size` pixels. Output depends only on the arguments.
void write_two_class_set(const std::filesystem::path& root, std::size_t per_class, std::size_t size,
                         std::uint64_t seed);

} // namespace sselbp::synth
