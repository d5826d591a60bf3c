#include "synth.hpp"

#include <sselbp/bench.hpp>
#include <sselbp/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace sselbp::synth {

namespace {

double unit(SplitMix64& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

} // namespace

GrayImage gradient_texture(std::size_t size, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const double slope = 0.5 + unit(rng);
    const double c = 0.5 * static_cast<double>(size - 1);
    std::vector<double> data(size * size);
    for (std::size_t y = 0; y < size; ++y)
        for (std::size_t x = 0; x < size; ++x) {
            const double t = std::cos(theta) * (static_cast<double>(x) - c) + std::sin(theta) * (static_cast<double>(y) - c);
            data[y * size + x] = std::clamp(std::round(128.0 + slope * t), 0.0, 255.0);
        }
    return GrayImage(size, size, std::move(data));
}

GrayImage noise_texture(std::size_t size, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> data(size * size);
    for (double& v : data) v = static_cast<double>(rng.below(256));
    return GrayImage(size, size, std::move(data));
}

void write_two_class_set(const std::filesystem::path& root, std::size_t per_class, std::size_t size,
                         std::uint64_t seed) {
    std::error_code ec;
    for (const char* cls : {"gradient", "noise"}) {
        std::filesystem::create_directories(root / cls, ec);
        if (ec) throw IoError("cannot create '" + (root / cls).string() + "': " + ec.message());
    }
    for (std::size_t i = 0; i < per_class; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%03zu.pgm", i);
        save_pgm(root / "gradient" / name, gradient_texture(size, SplitMix64::mix(seed + 2 * i)));
        save_pgm(root / "noise" / name, noise_texture(size, SplitMix64::mix(seed + 2 * i + 1)));
    }
}

} // namespace sselbp::synth
