#pragma once

#include "sselbp/imgio.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sselbp {

/// Sampled, unit-sum 1-D Gaussian truncated at half-width ceil(3 sigma).
class GaussianKernel {
public:
    /// Throws ParameterError unless sigma is finite and positive.
    explicit GaussianKernel(double sigma);

    double sigma() const noexcept { return sigma_; }
    std::size_t half_width() const noexcept { return taps_.size() / 2; }
    std::span<const double> taps() const noexcept { return taps_; }

private:
    double sigma_;
    std::vector<double> taps_;
};

/// Separable convolution, horizontal pass then vertical pass, with replicate
/// (clamp-to-edge) borders. Output has the input's dimensions.
GrayImage smooth(const GrayImage& img, const GaussianKernel& kernel);

/// Cascade of `levels` images: level 0 is the input, level l is level l-1
/// smoothed once more with the same kernel.
class ScaleSpace {
public:
    ScaleSpace(const GrayImage& base, std::size_t levels, double sigma);

    std::size_t size() const noexcept { return levels_.size(); }
    double sigma() const noexcept { return sigma_; }
    const GrayImage& operator[](std::size_t l) const { return levels_.at(l); }
    std::span<const GrayImage> levels() const noexcept { return levels_; }

    auto begin() const noexcept { return levels_.begin(); }
    auto end() const noexcept { return levels_.end(); }

private:
    double sigma_;
    std::vector<GrayImage> levels_;
};

/// Throws ParameterError when `levels` is zero or sigma is not positive.
inline ScaleSpace build_scale_space(const GrayImage& img, std::size_t levels, double sigma) {
    return ScaleSpace(img, levels, sigma);
}

} // namespace sselbp
