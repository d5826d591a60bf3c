#pragma once

#include "sselbp/imgio.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sselbp {

/// Inner-circle radius that stands for the center pixel itself.
inline constexpr double kCenter = 0.0;

/// Smallest and largest supported neighbor counts.
inline constexpr unsigned kMinNeighbors = 2;
inline constexpr unsigned kMaxNeighbors = 24;

/// P neighbors per circle and the strictly increasing radii R_1 < ... < R_N.
/// The radial-difference partner of radius i is radius i-1, and the center
/// pixel (kCenter) for the first radius.
class RadiusScheme {
public:
    /// Throws ParameterError for P outside [2, 24], an empty radius list,
    /// radii below 1 or not strictly increasing.
    RadiusScheme(unsigned neighbors, std::vector<double> radii);

    unsigned neighbors() const noexcept { return neighbors_; }
    std::size_t count() const noexcept { return radii_.size(); }
    std::span<const double> radii() const noexcept { return radii_; }
    double radius(std::size_t i) const { return radii_.at(i); }
    double inner_radius(std::size_t i) const { return i == 0 ? kCenter : radii_.at(i - 1); }
    std::vector<double> inner_radii() const;

    double max_radius() const noexcept { return radii_.back(); }
    /// Border shared by every radius so all histograms count the same pixels.
    std::size_t margin() const noexcept;

    friend bool operator==(const RadiusScheme&, const RadiusScheme&) = default;

private:
    unsigned neighbors_;
    std::vector<double> radii_;
};

/// Rotation-invariant uniform ("riu2") code table for P-bit patterns.
/// Patterns with at most two circular 0/1 transitions map to their popcount,
/// every other pattern maps to P + 1.
class Riu2Table {
public:
    explicit Riu2Table(unsigned neighbors);

    unsigned neighbors() const noexcept { return neighbors_; }
    /// Number of distinct codes, P + 2.
    unsigned codes() const noexcept { return neighbors_ + 2; }
    std::uint8_t operator[](std::uint32_t pattern) const noexcept { return map_[pattern]; }
    std::span<const std::uint8_t> map() const noexcept { return map_; }

private:
    unsigned neighbors_;
    std::vector<std::uint8_t> map_;
};

inline Riu2Table build_riu2_table(unsigned neighbors) { return Riu2Table(neighbors); }

/// Circular 0/1 transition count of the low `bits` bits of `pattern`.
unsigned circular_transitions(std::uint32_t pattern, unsigned bits) noexcept;

/// Precomputed bilinear tap for one neighbor on a circle, relative to the
/// center pixel. `step_x`/`step_y` are 0 when the coordinate lies on the
/// integer grid, so the tap never touches a pixel beyond the circle.
struct CircleTap {
    std::ptrdiff_t dx;
    std::ptrdiff_t dy;
    std::ptrdiff_t step_x;
    std::ptrdiff_t step_y;
    double w00, w10, w01, w11;
};

/// Taps for P neighbors on a circle of radius R. Neighbor 0 is due east and
/// the order is counterclockwise on screen: neighbor p sits at
/// (R cos(2 pi p / P), -R sin(2 pi p / P)) in (column, row) offsets. When P is
/// a multiple of 4 the later quadrants are exact 90 degree rotations of the
/// first, and coordinates within 1e-6 of an integer snap to it.
std::vector<CircleTap> circle_taps(double radius, unsigned neighbors);

/// Bilinear sample at `center` (pointer to the center pixel) for one tap.
inline double interpolate(const double* center, std::ptrdiff_t stride, const CircleTap& t) noexcept {
    const double* a = center + t.dy * stride + t.dx;
    const double* b = a + t.step_y * stride;
    return t.w00 * a[0] + t.w10 * a[t.step_x] + t.w01 * b[0] + t.w11 * b[t.step_x];
}

/// Samples the P circle neighbors of pixel (cx, cy). Throws ParameterError if
/// any interpolation support falls outside the image.
std::vector<double> sample_circle(const GrayImage& img, std::size_t cx, std::size_t cy, double radius,
                                  unsigned neighbors);

/// Center-intensity bit: 1 when the center is not below the image mean.
inline unsigned elbp_ci(double center_value, double image_mean) noexcept {
    return center_value >= image_mean ? 1u : 0u;
}

/// Neighbor-intensity code: neighbors thresholded at their own mean.
unsigned elbp_ni(std::span<const double> neighbors, const Riu2Table& table);

/// Radial-difference code: outer[p] thresholded at inner[p].
unsigned elbp_rd(std::span<const double> outer, std::span<const double> inner, const Riu2Table& table);

/// Joint CI x NI x RD counts for one (P, R) pair, 2 (P+2)^2 bins laid out as
/// ci (P+2)^2 + ni (P+2) + rd.
class JointHistogram {
public:
    explicit JointHistogram(unsigned neighbors);

    unsigned neighbors() const noexcept { return neighbors_; }
    std::size_t size() const noexcept { return bins_.size(); }
    std::span<const std::uint64_t> bins() const noexcept { return bins_; }
    std::uint64_t total() const noexcept;

    static std::size_t bin_count(unsigned neighbors) noexcept {
        const std::size_t c = neighbors + 2;
        return 2 * c * c;
    }
    std::size_t index(unsigned ci, unsigned ni, unsigned rd) const noexcept {
        const std::size_t c = neighbors_ + 2;
        return ci * c * c + ni * c + rd;
    }

    void add(unsigned ci, unsigned ni, unsigned rd) noexcept { ++bins_[index(ci, ni, rd)]; }
    JointHistogram& operator+=(const JointHistogram& other);

    friend bool operator==(const JointHistogram&, const JointHistogram&) = default;

private:
    unsigned neighbors_;
    std::vector<std::uint64_t> bins_;
};

/// Histogram of (ci, ni, rd) over pixels with both coordinates in
/// [margin, dim - margin). The CI threshold is the mean of the whole image.
/// `inner_radius` is the radial-difference partner circle, kCenter for the
/// center pixel. Throws ParameterError when the margin is smaller than
/// ceil(radius) or leaves no valid pixel.
JointHistogram joint_histogram(const GrayImage& img, double radius, double inner_radius, unsigned neighbors,
                               std::size_t margin, const Riu2Table& table);

/// All N histograms of a scheme in one pass, sharing samples between each
/// radius and its radial-difference partner. Uses scheme.margin() for every
/// radius; identical to N separate joint_histogram calls.
std::vector<JointHistogram> joint_histograms(const GrayImage& img, const RadiusScheme& scheme,
                                             const Riu2Table& table);

} // namespace sselbp
