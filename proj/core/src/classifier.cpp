#include "sselbp/classifier.hpp"

#include "sselbp/error.hpp"

#include <limits>

namespace sselbp {

double chi_square(std::span<const double> t, std::span<const double> m) {
    if (t.size() != m.size())
        throw ParameterError("chi-square of vectors with lengths " + std::to_string(t.size()) + " and " +
                             std::to_string(m.size()));
    double d = 0.0;
    for (std::size_t w = 0; w < t.size(); ++w) {
        const double sum = t[w] + m[w];
        if (sum != 0.0) {
            const double diff = t[w] - m[w];
            d += diff * diff / sum;
        }
    }
    return d;
}

double chi_square(const SselbpFeature& t, const SselbpFeature& m) {
    if (t.fingerprint != m.fingerprint) throw ParameterError("features were extracted with different configs");
    return chi_square(t.values, m.values);
}

std::size_t nearest_neighbor(const SselbpFeature& test, std::span<const LabeledFeature> gallery) {
    if (gallery.empty()) throw ParameterError("nearest-neighbor gallery is empty");
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < gallery.size(); ++i) {
        const double d = chi_square(test, gallery[i].feature);
        if (d < best_distance) {
            best_distance = d;
            best = i;
        }
    }
    return best;
}

} // namespace sselbp
