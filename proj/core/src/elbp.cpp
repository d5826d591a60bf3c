#include "sselbp/elbp.hpp"

#include "sselbp/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace sselbp {

namespace {

void check_neighbors(unsigned neighbors) {
    if (neighbors < kMinNeighbors || neighbors > kMaxNeighbors)
        throw ParameterError("neighbor count must be in [" + std::to_string(kMinNeighbors) + ", " +
                             std::to_string(kMaxNeighbors) + "], got " + std::to_string(neighbors));
}

double snap(double v) {
    const double r = std::nearbyint(v);
    return std::abs(v - r) < 1e-6 ? r : v;
}

// Largest |offset| any tap in `taps` reaches from the center pixel.
std::ptrdiff_t reach(const std::vector<CircleTap>& taps) {
    std::ptrdiff_t r = 0;
    for (const auto& t : taps) {
        r = std::max({r, std::abs(t.dx), std::abs(t.dx + t.step_x), std::abs(t.dy), std::abs(t.dy + t.step_y)});
    }
    return r;
}

} // namespace

RadiusScheme::RadiusScheme(unsigned neighbors, std::vector<double> radii)
    : neighbors_(neighbors), radii_(std::move(radii)) {
    check_neighbors(neighbors_);
    if (radii_.empty()) throw ParameterError("radius scheme needs at least one radius");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        if (!std::isfinite(radii_[i]) || radii_[i] < 1.0)
            throw ParameterError("radii must be finite and >= 1, got " + std::to_string(radii_[i]));
        if (i > 0 && !(radii_[i] > radii_[i - 1])) throw ParameterError("radii must be strictly increasing");
    }
}

std::vector<double> RadiusScheme::inner_radii() const {
    std::vector<double> inner(radii_.size());
    for (std::size_t i = 0; i < inner.size(); ++i) inner[i] = inner_radius(i);
    return inner;
}

std::size_t RadiusScheme::margin() const noexcept {
    return static_cast<std::size_t>(std::ceil(max_radius()));
}

unsigned circular_transitions(std::uint32_t pattern, unsigned bits) noexcept {
    const std::uint32_t mask = bits >= 32 ? ~0u : ((1u << bits) - 1u);
    pattern &= mask;
    const std::uint32_t rotated = ((pattern >> 1) | (pattern << (bits - 1))) & mask;
    return static_cast<unsigned>(std::popcount(pattern ^ rotated));
}

Riu2Table::Riu2Table(unsigned neighbors) : neighbors_(neighbors) {
    check_neighbors(neighbors);
    map_.resize(std::size_t{1} << neighbors);
    const auto non_uniform = static_cast<std::uint8_t>(neighbors + 1);
    for (std::uint32_t b = 0; b < map_.size(); ++b) {
        map_[b] = circular_transitions(b, neighbors) <= 2 ? static_cast<std::uint8_t>(std::popcount(b)) : non_uniform;
    }
}

std::vector<CircleTap> circle_taps(double radius, unsigned neighbors) {
    check_neighbors(neighbors);
    if (!std::isfinite(radius) || radius <= 0.0) throw ParameterError("circle radius must be positive");

    std::vector<CircleTap> taps(neighbors);
    const bool quarter_symmetric = neighbors % 4 == 0;
    const unsigned quarter = neighbors / 4;
    for (unsigned p = 0; p < neighbors; ++p) {
        double c, s;
        if (quarter_symmetric) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(p % quarter) / neighbors;
            c = std::cos(theta);
            s = std::sin(theta);
            for (unsigned q = 0; q < p / quarter; ++q) {
                const double t = c;
                c = -s;
                s = t;
            }
        } else {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(p) / neighbors;
            c = std::cos(theta);
            s = std::sin(theta);
        }
        const double x = snap(radius * c);
        const double y = snap(-(radius * s));
        const double fx = std::floor(x);
        const double fy = std::floor(y);
        const double tx = x - fx;
        const double ty = y - fy;

        CircleTap& t = taps[p];
        t.dx = static_cast<std::ptrdiff_t>(fx);
        t.dy = static_cast<std::ptrdiff_t>(fy);
        t.step_x = tx > 0.0 ? 1 : 0;
        t.step_y = ty > 0.0 ? 1 : 0;
        t.w00 = (1.0 - tx) * (1.0 - ty);
        t.w10 = tx * (1.0 - ty);
        t.w01 = (1.0 - tx) * ty;
        t.w11 = tx * ty;
    }
    return taps;
}

std::vector<double> sample_circle(const GrayImage& img, std::size_t cx, std::size_t cy, double radius,
                                  unsigned neighbors) {
    const auto taps = circle_taps(radius, neighbors);
    const auto r = static_cast<std::size_t>(reach(taps));
    if (cx < r || cy < r || cx + r >= img.width() || cy + r >= img.height())
        throw ParameterError("circle of radius " + std::to_string(radius) + " around (" + std::to_string(cx) + ", " +
                             std::to_string(cy) + ") leaves the image");

    const auto stride = static_cast<std::ptrdiff_t>(img.width());
    const double* center = img.pixels().data() + cy * img.width() + cx;
    std::vector<double> values(neighbors);
    for (unsigned p = 0; p < neighbors; ++p) values[p] = interpolate(center, stride, taps[p]);
    return values;
}

unsigned elbp_ni(std::span<const double> neighbors, const Riu2Table& table) {
    double sum = 0.0;
    for (double v : neighbors) sum += v;
    const double mean = sum / static_cast<double>(neighbors.size());
    std::uint32_t word = 0;
    for (std::size_t p = 0; p < neighbors.size(); ++p)
        if (neighbors[p] >= mean) word |= 1u << p;
    return table[word];
}

unsigned elbp_rd(std::span<const double> outer, std::span<const double> inner, const Riu2Table& table) {
    std::uint32_t word = 0;
    for (std::size_t p = 0; p < outer.size(); ++p)
        if (outer[p] >= inner[p]) word |= 1u << p;
    return table[word];
}

JointHistogram::JointHistogram(unsigned neighbors) : neighbors_(neighbors), bins_(bin_count(neighbors), 0) {}

std::uint64_t JointHistogram::total() const noexcept {
    std::uint64_t sum = 0;
    for (auto b : bins_) sum += b;
    return sum;
}

JointHistogram& JointHistogram::operator+=(const JointHistogram& other) {
    if (other.neighbors_ != neighbors_) throw ParameterError("cannot merge histograms with different P");
    for (std::size_t i = 0; i < bins_.size(); ++i) bins_[i] += other.bins_[i];
    return *this;
}

namespace {

void check_valid_region(const GrayImage& img, std::size_t margin) {
    if (img.width() <= 2 * margin || img.height() <= 2 * margin)
        throw ParameterError("image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                             " has no pixels inside a margin of " + std::to_string(margin));
}

void check_table(const Riu2Table& table, unsigned neighbors) {
    if (table.neighbors() != neighbors) throw ParameterError("riu2 table was built for a different P");
}

// One radius of the fused pass: samples into `cur`, thresholds against `prev`.
struct CircleState {
    std::vector<CircleTap> taps;
    std::array<double, kMaxNeighbors> values{};
};

} // namespace

JointHistogram joint_histogram(const GrayImage& img, double radius, double inner_radius, unsigned neighbors,
                               std::size_t margin, const Riu2Table& table) {
    check_table(table, neighbors);
    const auto outer_taps = circle_taps(radius, neighbors);
    const bool center_inner = inner_radius == kCenter;
    if (!center_inner && !(inner_radius > 0.0 && inner_radius < radius))
        throw ParameterError("inner radius must be the center or smaller than the outer radius");
    const auto inner_taps = center_inner ? std::vector<CircleTap>{} : circle_taps(inner_radius, neighbors);
    if (margin < static_cast<std::size_t>(std::ceil(radius)) || margin < static_cast<std::size_t>(reach(outer_taps)))
        throw ParameterError("margin " + std::to_string(margin) + " is smaller than radius " + std::to_string(radius));
    check_valid_region(img, margin);

    const double image_mean = mean(img);
    const auto stride = static_cast<std::ptrdiff_t>(img.width());
    const double* data = img.pixels().data();
    std::array<double, kMaxNeighbors> outer{};
    std::array<double, kMaxNeighbors> inner{};
    const std::span<const double> outer_view(outer.data(), neighbors);
    const std::span<const double> inner_view(inner.data(), neighbors);

    JointHistogram hist(neighbors);
    for (std::size_t y = margin; y + margin < img.height(); ++y) {
        for (std::size_t x = margin; x + margin < img.width(); ++x) {
            const double* center = data + y * img.width() + x;
            for (unsigned p = 0; p < neighbors; ++p) outer[p] = interpolate(center, stride, outer_taps[p]);
            if (center_inner) {
                std::fill_n(inner.begin(), neighbors, *center);
            } else {
                for (unsigned p = 0; p < neighbors; ++p) inner[p] = interpolate(center, stride, inner_taps[p]);
            }
            hist.add(elbp_ci(*center, image_mean), elbp_ni(outer_view, table), elbp_rd(outer_view, inner_view, table));
        }
    }
    return hist;
}

std::vector<JointHistogram> joint_histograms(const GrayImage& img, const RadiusScheme& scheme,
                                             const Riu2Table& table) {
    const unsigned neighbors = scheme.neighbors();
    check_table(table, neighbors);
    const std::size_t margin = scheme.margin();
    check_valid_region(img, margin);

    std::vector<CircleState> circles(scheme.count());
    for (std::size_t i = 0; i < circles.size(); ++i) circles[i].taps = circle_taps(scheme.radius(i), neighbors);

    std::vector<JointHistogram> hists(scheme.count(), JointHistogram(neighbors));
    const double image_mean = mean(img);
    const auto stride = static_cast<std::ptrdiff_t>(img.width());
    const double* data = img.pixels().data();
    std::array<double, kMaxNeighbors> center_values{};

    for (std::size_t y = margin; y + margin < img.height(); ++y) {
        for (std::size_t x = margin; x + margin < img.width(); ++x) {
            const double* center = data + y * img.width() + x;
            const unsigned ci = elbp_ci(*center, image_mean);
            std::fill_n(center_values.begin(), neighbors, *center);
            const double* prev = center_values.data();
            for (std::size_t i = 0; i < circles.size(); ++i) {
                CircleState& c = circles[i];
                for (unsigned p = 0; p < neighbors; ++p) c.values[p] = interpolate(center, stride, c.taps[p]);
                const std::span<const double> cur(c.values.data(), neighbors);
                hists[i].add(ci, elbp_ni(cur, table), elbp_rd(cur, std::span<const double>(prev, neighbors), table));
                prev = c.values.data();
            }
        }
    }
    return hists;
}

} // namespace sselbp
