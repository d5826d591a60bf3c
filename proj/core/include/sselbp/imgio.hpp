#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace sselbp {

/// Row-major grayscale image of double intensities.
///
/// Construction validates the dimensions, the buffer length and that every
/// value is finite; a GrayImage is immutable afterwards.
class GrayImage {
public:
    GrayImage(std::size_t width, std::size_t height, std::vector<double> data);

    /// Image of the given size filled with `value`.
    static GrayImage filled(std::size_t width, std::size_t height, double value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    double at(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }
    std::span<const double> pixels() const noexcept { return data_; }
    std::span<const double> row(std::size_t y) const noexcept {
        return std::span<const double>(data_).subspan(y * width_, width_);
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<double> data_;
};

/// Arithmetic mean over all pixels.
double mean(const GrayImage& img) noexcept;

/// Decodes a PNG (8/16-bit gray, gray+alpha, RGB, RGBA, palette) or a binary
/// PGM (P5, maxval <= 255). Color is reduced with BT.601 luma
/// Y = 0.299 R + 0.587 G + 0.114 B; values stay in [0, 255].
///
/// Throws IoError when the file cannot be read and FormatError when the
/// content is neither PNG nor P5 PGM.
GrayImage load_grayscale(const std::filesystem::path& path);

/// Writes a binary PGM (P5), rounding and clamping each value to [0, 255].
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

/// Zero-mean, unit (population) standard deviation copy of `img`.
/// A constant image maps to all zeros.
GrayImage normalize_image(const GrayImage& img);

} // namespace sselbp
