#include "sselbp/scale_space.hpp"

#include "sselbp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sselbp {

GaussianKernel::GaussianKernel(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw ParameterError("gaussian sigma must be positive, got " + std::to_string(sigma));

    const auto h = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
    taps_.resize(static_cast<std::size_t>(2 * h + 1));
    double sum = 0.0;
    for (std::ptrdiff_t i = 0; i <= 2 * h; ++i) {
        const double d = static_cast<double>(i - h);
        taps_[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
    // Symmetric pair sums keep the normalized taps mirror-exact.
    for (std::ptrdiff_t i = 0; i < h; ++i) sum += 2.0 * taps_[static_cast<std::size_t>(i)];
    sum += taps_[static_cast<std::size_t>(h)];
    for (double& t : taps_) t /= sum;
}

GrayImage smooth(const GrayImage& img, const GaussianKernel& kernel) {
    const auto w = static_cast<std::ptrdiff_t>(img.width());
    const auto h = static_cast<std::ptrdiff_t>(img.height());
    const auto taps = kernel.taps();
    const auto r = static_cast<std::ptrdiff_t>(kernel.half_width());
    const auto src = img.pixels();

    auto clamp = [](std::ptrdiff_t v, std::ptrdiff_t hi) { return std::clamp<std::ptrdiff_t>(v, 0, hi - 1); };

    std::vector<double> tmp(src.size());
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        const double* in = src.data() + y * w;
        double* out = tmp.data() + y * w;
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            double acc = 0.0;
            for (std::ptrdiff_t k = -r; k <= r; ++k) acc += taps[static_cast<std::size_t>(k + r)] * in[clamp(x + k, w)];
            out[x] = acc;
        }
    }

    std::vector<double> dst(src.size());
    std::vector<const double*> rows(static_cast<std::size_t>(2 * r + 1));
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t k = -r; k <= r; ++k) rows[static_cast<std::size_t>(k + r)] = tmp.data() + clamp(y + k, h) * w;
        double* out = dst.data() + y * w;
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            double acc = 0.0;
            for (std::size_t k = 0; k < rows.size(); ++k) acc += taps[k] * rows[k][x];
            out[x] = acc;
        }
    }
    return GrayImage(img.width(), img.height(), std::move(dst));
}

ScaleSpace::ScaleSpace(const GrayImage& base, std::size_t levels, double sigma) : sigma_(sigma) {
    if (levels == 0) throw ParameterError("scale space needs at least one level");
    const GaussianKernel kernel(sigma);
    levels_.reserve(levels);
    levels_.push_back(base);
    for (std::size_t l = 1; l < levels; ++l) levels_.push_back(smooth(levels_.back(), kernel));
}

} // namespace sselbp
