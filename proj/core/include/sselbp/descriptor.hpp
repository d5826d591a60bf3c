#pragma once

#include "sselbp/elbp.hpp"
#include "sselbp/imgio.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sselbp {

/// Every parameter of the descriptor pipeline. The defaults are the
/// recommended setting: P = 8, radii (2, 3, 4, 7), four scales, sigma = 2^0.25.
struct DescriptorConfig {
    RadiusScheme scheme{8, {2.0, 3.0, 4.0, 7.0}};
    std::size_t levels = 4;
    double sigma = std::pow(2.0, 0.25);

    /// Throws ParameterError for zero levels or a non-positive sigma.
    void validate() const;

    /// N 2 (P+2)^2.
    std::size_t feature_length() const noexcept;
    /// Smallest width/height extract() accepts: 2 ceil(max radius) + 2.
    std::size_t min_image_size() const noexcept { return 2 * scheme.margin() + 2; }
    /// FNV-1a over P, the radii bit patterns, the level count and sigma.
    std::uint64_t fingerprint() const noexcept;

    friend bool operator==(const DescriptorConfig&, const DescriptorConfig&) = default;
};

/// Pooled descriptor plus the fingerprint of the configuration that made it.
struct SselbpFeature {
    std::vector<double> values;
    std::uint64_t fingerprint = 0;

    std::size_t size() const noexcept { return values.size(); }
    friend bool operator==(const SselbpFeature&, const SselbpFeature&) = default;
};

/// Per-radius joint histograms of one image, each L1-normalized to sum 1,
/// in radius order.
std::vector<std::vector<double>> multiscale_histogram(const GrayImage& img, const RadiusScheme& scheme,
                                                      const Riu2Table& table);
std::vector<std::vector<double>> multiscale_histogram(const GrayImage& img, const RadiusScheme& scheme);

/// Reusable extractor; holds the riu2 table so repeated calls do not rebuild it.
/// Safe to share between threads.
class Extractor {
public:
    explicit Extractor(DescriptorConfig config = {});

    const DescriptorConfig& config() const noexcept { return config_; }

    /// normalize -> scale space -> multi-scale histograms per level -> bin-wise
    /// max over levels. Throws ParameterError when either dimension is below
    /// config().min_image_size().
    SselbpFeature operator()(const GrayImage& img) const;

    /// The concatenated normalized histograms of every scale level, before
    /// pooling.
    std::vector<std::vector<double>> level_features(const GrayImage& img) const;

private:
    DescriptorConfig config_;
    Riu2Table table_;
};

SselbpFeature extract(const GrayImage& img, const DescriptorConfig& config = {});

/// Elementwise maximum of equally sized vectors.
std::vector<double> max_pool(const std::vector<std::vector<double>>& vectors);

} // namespace sselbp
