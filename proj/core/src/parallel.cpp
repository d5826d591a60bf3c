#include "sselbp/parallel.hpp"

#include "sselbp/error.hpp"

#include <cstdlib>
#include <string>

namespace sselbp {

std::size_t worker_count_from_env() {
    const char* raw = std::getenv("SSELBP_THREADS");
    std::size_t n = 0;
    if (raw && *raw) {
        char* end = nullptr;
        const long long v = std::strtoll(raw, &end, 10);
        if (*end != '\0' || v < 0) throw ParameterError(std::string("SSELBP_THREADS must be a non-negative integer, got '") + raw + "'");
        n = static_cast<std::size_t>(v);
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

} // namespace sselbp
