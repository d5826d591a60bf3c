#include "sselbp/descriptor.hpp"

#include "sselbp/error.hpp"
#include "sselbp/hash.hpp"
#include "sselbp/scale_space.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace sselbp {

void DescriptorConfig::validate() const {
    if (levels == 0) throw ParameterError("scale count must be at least 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be positive and finite");
}

std::size_t DescriptorConfig::feature_length() const noexcept {
    return scheme.count() * JointHistogram::bin_count(scheme.neighbors());
}

std::uint64_t DescriptorConfig::fingerprint() const noexcept {
    Fnv1a64 h;
    h.update_u64(scheme.neighbors()).update_u64(scheme.count());
    for (double r : scheme.radii()) h.update_u64(std::bit_cast<std::uint64_t>(r));
    h.update_u64(levels).update_u64(std::bit_cast<std::uint64_t>(sigma));
    return h.digest();
}

std::vector<std::vector<double>> multiscale_histogram(const GrayImage& img, const RadiusScheme& scheme,
                                                      const Riu2Table& table) {
    const auto hists = joint_histograms(img, scheme, table);
    std::vector<std::vector<double>> blocks;
    blocks.reserve(hists.size());
    for (const auto& h : hists) {
        const double total = static_cast<double>(h.total());
        std::vector<double> block(h.size());
        for (std::size_t b = 0; b < block.size(); ++b) block[b] = static_cast<double>(h.bins()[b]) / total;
        blocks.push_back(std::move(block));
    }
    return blocks;
}

std::vector<std::vector<double>> multiscale_histogram(const GrayImage& img, const RadiusScheme& scheme) {
    return multiscale_histogram(img, scheme, Riu2Table(scheme.neighbors()));
}

std::vector<double> max_pool(const std::vector<std::vector<double>>& vectors) {
    if (vectors.empty()) throw ParameterError("nothing to pool");
    std::vector<double> pooled = vectors.front();
    for (std::size_t l = 1; l < vectors.size(); ++l) {
        if (vectors[l].size() != pooled.size()) throw ParameterError("pooled vectors differ in length");
        for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] = std::max(pooled[i], vectors[l][i]);
    }
    return pooled;
}

Extractor::Extractor(DescriptorConfig config)
    : config_(std::move(config)), table_(config_.scheme.neighbors()) {
    config_.validate();
}

std::vector<std::vector<double>> Extractor::level_features(const GrayImage& img) const {
    const std::size_t min_size = config_.min_image_size();
    if (img.width() < min_size || img.height() < min_size)
        throw ParameterError("image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                             " is smaller than the required " + std::to_string(min_size) + "x" +
                             std::to_string(min_size));

    const ScaleSpace space(normalize_image(img), config_.levels, config_.sigma);
    std::vector<std::vector<double>> levels;
    levels.reserve(space.size());
    for (const GrayImage& level : space) {
        std::vector<double> concat;
        concat.reserve(config_.feature_length());
        for (const auto& block : multiscale_histogram(level, config_.scheme, table_))
            concat.insert(concat.end(), block.begin(), block.end());
        levels.push_back(std::move(concat));
    }
    return levels;
}

SselbpFeature Extractor::operator()(const GrayImage& img) const {
    return SselbpFeature{max_pool(level_features(img)), config_.fingerprint()};
}

SselbpFeature extract(const GrayImage& img, const DescriptorConfig& config) {
    return Extractor(config)(img);
}

} // namespace sselbp
