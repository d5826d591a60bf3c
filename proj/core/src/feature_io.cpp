#include "sselbp/feature_io.hpp"

#include "sselbp/error.hpp"
#include "sselbp/hash.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace sselbp {

namespace {

void put_le(std::vector<std::byte>& out, std::uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::byte>((value >> (8 * i)) & 0xff));
}

std::uint64_t get_le(std::span<const std::byte> in, std::size_t offset, int bytes) {
    std::uint64_t value = 0;
    for (int i = 0; i < bytes; ++i) value |= static_cast<std::uint64_t>(in[offset + i]) << (8 * i);
    return value;
}

std::uint16_t checked_u16(std::size_t v, const char* what) {
    if (v > std::numeric_limits<std::uint16_t>::max())
        throw ParameterError(std::string(what) + " does not fit the binary header");
    return static_cast<std::uint16_t>(v);
}

} // namespace

std::uint64_t header_fingerprint(unsigned neighbors, std::size_t radii, std::size_t levels) noexcept {
    Fnv1a64 h;
    const char tag[] = "sselbp-header";
    h.update(std::as_bytes(std::span<const char>(tag, sizeof tag - 1)));
    return h.update_u64(neighbors).update_u64(radii).update_u64(levels).digest();
}

std::vector<std::byte> encode_feature_binary(const SselbpFeature& feature, const DescriptorConfig& config) {
    if (feature.size() != config.feature_length())
        throw ParameterError("feature length " + std::to_string(feature.size()) + " does not match config length " +
                             std::to_string(config.feature_length()));
    std::vector<std::byte> out;
    out.reserve(kBinaryHeaderSize + 8 * feature.size());
    for (char c : {'S', 'S', 'E', 'L'}) out.push_back(static_cast<std::byte>(c));
    put_le(out, kBinaryFeatureVersion, 2);
    put_le(out, checked_u16(config.scheme.neighbors(), "P"), 2);
    put_le(out, checked_u16(config.scheme.count(), "radius count"), 2);
    put_le(out, checked_u16(config.levels, "scale count"), 2);
    put_le(out, 0, 4);
    for (double v : feature.values) put_le(out, std::bit_cast<std::uint64_t>(v), 8);
    return out;
}

SselbpFeature decode_feature_binary(std::span<const std::byte> bytes, const DescriptorConfig* expected) {
    if (bytes.size() < kBinaryHeaderSize || std::memcmp(bytes.data(), "SSEL", 4) != 0)
        throw FormatError("not an SSEL binary feature");
    BinaryFeatureHeader header;
    header.version = static_cast<std::uint16_t>(get_le(bytes, 4, 2));
    header.neighbors = static_cast<std::uint16_t>(get_le(bytes, 6, 2));
    header.radii = static_cast<std::uint16_t>(get_le(bytes, 8, 2));
    header.levels = static_cast<std::uint16_t>(get_le(bytes, 10, 2));
    if (header.version != kBinaryFeatureVersion)
        throw FormatError("unsupported SSEL version " + std::to_string(header.version));
    if (header.neighbors < kMinNeighbors || header.neighbors > kMaxNeighbors || header.radii == 0 || header.levels == 0)
        throw FormatError("SSEL header has invalid P/N/L");

    const std::size_t length = header.radii * JointHistogram::bin_count(header.neighbors);
    if (bytes.size() != kBinaryHeaderSize + 8 * length)
        throw FormatError("SSEL payload is " + std::to_string(bytes.size() - kBinaryHeaderSize) + " bytes, expected " +
                          std::to_string(8 * length));

    SselbpFeature feature;
    feature.values.resize(length);
    for (std::size_t i = 0; i < length; ++i)
        feature.values[i] = std::bit_cast<double>(get_le(bytes, kBinaryHeaderSize + 8 * i, 8));

    if (expected) {
        if (header.neighbors != expected->scheme.neighbors() || header.radii != expected->scheme.count() ||
            header.levels != expected->levels)
            throw ParameterError("binary feature header does not match the expected config");
        feature.fingerprint = expected->fingerprint();
    } else {
        feature.fingerprint = header_fingerprint(header.neighbors, header.radii, header.levels);
    }
    return feature;
}

void write_feature_binary(const std::filesystem::path& path, const SselbpFeature& feature,
                          const DescriptorConfig& config) {
    const auto bytes = encode_feature_binary(feature, config);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

SselbpFeature read_feature_binary(const std::filesystem::path& path, const DescriptorConfig* expected) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    const std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return decode_feature_binary(std::as_bytes(std::span<const char>(raw)), expected);
    } catch (const FormatError& e) {
        throw FormatError("'" + path.string() + "': " + e.what());
    }
}

nlohmann::json config_to_json(const DescriptorConfig& config) {
    const auto radii = config.scheme.radii();
    return {{"P", config.scheme.neighbors()},
            {"radii", std::vector<double>(radii.begin(), radii.end())},
            {"L", config.levels},
            {"sigma", config.sigma}};
}

DescriptorConfig config_from_json(const nlohmann::json& j) {
    try {
        DescriptorConfig config{RadiusScheme(j.at("P").get<unsigned>(), j.at("radii").get<std::vector<double>>()),
                                j.at("L").get<std::size_t>(), j.at("sigma").get<double>()};
        config.validate();
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad descriptor config: ") + e.what());
    }
}

nlohmann::json feature_to_json(const SselbpFeature& feature, const DescriptorConfig& config) {
    if (feature.size() != config.feature_length())
        throw ParameterError("feature length does not match config length");
    return {{"config", config_to_json(config)}, {"length", feature.size()}, {"values", feature.values}};
}

ConfiguredFeature feature_from_json(const nlohmann::json& j) {
    try {
        DescriptorConfig config = config_from_json(j.at("config"));
        SselbpFeature feature{j.at("values").get<std::vector<double>>(), config.fingerprint()};
        if (j.at("length").get<std::size_t>() != feature.size() || feature.size() != config.feature_length())
            throw FormatError("feature length field disagrees with values/config");
        return {std::move(feature), std::move(config)};
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad feature record: ") + e.what());
    }
}

void write_feature_json(const std::filesystem::path& path, const SselbpFeature& feature,
                        const DescriptorConfig& config) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot create '" + path.string() + "'");
    out << feature_to_json(feature, config).dump() << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ConfiguredFeature read_feature_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("'" + path.string() + "': " + e.what());
    }
    try {
        return feature_from_json(j);
    } catch (const FormatError& e) {
        throw FormatError("'" + path.string() + "': " + e.what());
    }
}

SselbpFeature read_feature(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".json") return read_feature_json(path).feature;
    if (ext == ".bin") return read_feature_binary(path);
    throw FormatError("'" + path.string() + "': feature files must end in .json or .bin");
}

} // namespace sselbp
