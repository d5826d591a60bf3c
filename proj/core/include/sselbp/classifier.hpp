#pragma once

#include "sselbp/descriptor.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sselbp {

struct LabeledFeature {
    SselbpFeature feature;
    std::string label;
};

/// Sum of (t - m)^2 / (t + m) over bins; bins with t + m == 0 contribute 0.
/// Throws ParameterError on a length mismatch.
double chi_square(std::span<const double> t, std::span<const double> m);

/// As above, and additionally requires matching config fingerprints.
double chi_square(const SselbpFeature& t, const SselbpFeature& m);

/// Index of the gallery item closest to `test` under chi-square; the first
/// (lowest index) wins on exact ties. Throws ParameterError for an empty
/// gallery or mismatched configs.
std::size_t nearest_neighbor(const SselbpFeature& test, std::span<const LabeledFeature> gallery);

inline const std::string& nnc_predict(const SselbpFeature& test, std::span<const LabeledFeature> gallery) {
    return gallery[nearest_neighbor(test, gallery)].label;
}

} // namespace sselbp
