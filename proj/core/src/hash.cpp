#include "sselbp/hash.hpp"

#include "sselbp/error.hpp"

#include <fstream>
#include <vector>

namespace sselbp {

std::uint64_t hash_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    Fnv1a64 h;
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        const auto n = static_cast<std::size_t>(in.gcount());
        h.update(std::as_bytes(std::span<const char>(buf.data(), n)));
    }
    if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
    return h.digest();
}

} // namespace sselbp
