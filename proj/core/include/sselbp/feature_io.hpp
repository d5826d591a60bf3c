#pragma once

#include "sselbp/descriptor.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace sselbp {

// Binary feature layout, all fields little-endian:
//
//   offset  size  field
//   0       4     magic "SSEL"
//   4       2     version (u16, currently 1)
//   6       2     P, neighbors per circle (u16)
//   8       2     N, number of radii (u16)
//   10      2     L, number of scale levels (u16)
//   12      4     reserved (u32, written as 0)
//   16      8*n   n = N 2 (P+2)^2 IEEE-754 binary64 values
//
// The header does not carry radii or sigma, so a feature read without an
// expected config gets header_fingerprint(P, N, L) instead of the full one.

inline constexpr std::uint16_t kBinaryFeatureVersion = 1;
inline constexpr std::size_t kBinaryHeaderSize = 16;

struct BinaryFeatureHeader {
    std::uint16_t version = kBinaryFeatureVersion;
    std::uint16_t neighbors = 0;
    std::uint16_t radii = 0;
    std::uint16_t levels = 0;
};

/// Fingerprint for features whose only known parameters are P, N and L.
std::uint64_t header_fingerprint(unsigned neighbors, std::size_t radii, std::size_t levels) noexcept;

std::vector<std::byte> encode_feature_binary(const SselbpFeature& feature, const DescriptorConfig& config);

/// Decodes and validates a binary feature. With `expected`, the header must
/// match its P/N/L and the feature takes its full fingerprint. Throws
/// FormatError on a malformed buffer and ParameterError on a config mismatch.
SselbpFeature decode_feature_binary(std::span<const std::byte> bytes,
                                    const DescriptorConfig* expected = nullptr);

void write_feature_binary(const std::filesystem::path& path, const SselbpFeature& feature,
                          const DescriptorConfig& config);
SselbpFeature read_feature_binary(const std::filesystem::path& path, const DescriptorConfig* expected = nullptr);

/// {"config": {"P", "radii", "L", "sigma"}, "length", "values"}
nlohmann::json config_to_json(const DescriptorConfig& config);
DescriptorConfig config_from_json(const nlohmann::json& j);

nlohmann::json feature_to_json(const SselbpFeature& feature, const DescriptorConfig& config);

struct ConfiguredFeature {
    SselbpFeature feature;
    DescriptorConfig config;
};
ConfiguredFeature feature_from_json(const nlohmann::json& j);

void write_feature_json(const std::filesystem::path& path, const SselbpFeature& feature,
                        const DescriptorConfig& config);
ConfiguredFeature read_feature_json(const std::filesystem::path& path);

/// Reads a .json or .bin feature file, choosing the decoder by extension.
SselbpFeature read_feature(const std::filesystem::path& path);

} // namespace sselbp
