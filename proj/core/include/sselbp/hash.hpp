#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>

namespace sselbp {

/// 64-bit FNV-1a, used for config fingerprints and feature-cache keys.
class Fnv1a64 {
public:
    Fnv1a64& update(std::span<const std::byte> bytes) noexcept {
        for (std::byte b : bytes) {
            state_ ^= static_cast<std::uint64_t>(b);
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }
    /// Feeds `value` as 8 little-endian bytes.
    Fnv1a64& update_u64(std::uint64_t value) noexcept {
        std::byte le[8];
        for (int i = 0; i < 8; ++i) le[i] = static_cast<std::byte>((value >> (8 * i)) & 0xff);
        return update(le);
    }
    std::uint64_t digest() const noexcept { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

/// FNV-1a 64 of a file's bytes. Throws IoError if the file cannot be read.
std::uint64_t hash_file(const std::filesystem::path& path);

} // namespace sselbp
