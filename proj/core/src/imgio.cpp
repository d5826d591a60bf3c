#include "sselbp/imgio.hpp"

#include "sselbp/error.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace sselbp {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width_ == 0 || height_ == 0)
        throw ParameterError("image dimensions must be at least 1x1");
    if (data_.size() != width_ * height_)
        throw ParameterError("image buffer has " + std::to_string(data_.size()) +
                             " values, expected " + std::to_string(width_ * height_));
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); }))
        throw ParameterError("image contains non-finite intensities");
}

GrayImage GrayImage::filled(std::size_t width, std::size_t height, double value) {
    return GrayImage(width, height, std::vector<double>(width * height, value));
}

double mean(const GrayImage& img) noexcept {
    double sum = 0.0;
    for (double v : img.pixels()) sum += v;
    return sum / static_cast<double>(img.size());
}

namespace {

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
    return bytes;
}

bool has_png_signature(const std::vector<unsigned char>& bytes) {
    return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

GrayImage decode_png(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw FormatError("'" + path.string() + "': " + image.message);

    // Gray sources are read as-is; color sources are fetched as 8-bit RGB and
    // reduced with BT.601 weights here rather than by libpng's own gray path.
    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const std::size_t channels = color ? 3 : 1;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        std::string message = image.message;
        png_image_free(&image);
        throw FormatError("'" + path.string() + "': " + message);
    }

    const std::size_t width = image.width;
    const std::size_t height = image.height;
    std::vector<double> data(width * height);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const png_byte* px = &buffer[i * channels];
        data[i] = color ? 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2] : static_cast<double>(px[0]);
    }
    return GrayImage(width, height, std::move(data));
}

// Netpbm header token; skips whitespace and '#' comments.
std::size_t next_pgm_number(const std::vector<unsigned char>& bytes, std::size_t& pos,
                            const std::filesystem::path& path) {
    for (;;) {
        while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
        if (pos < bytes.size() && bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            continue;
        }
        break;
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos]))
        throw FormatError("'" + path.string() + "': malformed PGM header");
    std::size_t value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
        value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
        if (value > (1u << 24)) throw FormatError("'" + path.string() + "': PGM header value out of range");
        ++pos;
    }
    return value;
}

GrayImage decode_pgm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
    std::size_t pos = 2;
    const std::size_t width = next_pgm_number(bytes, pos, path);
    const std::size_t height = next_pgm_number(bytes, pos, path);
    const std::size_t maxval = next_pgm_number(bytes, pos, path);
    if (width == 0 || height == 0) throw FormatError("'" + path.string() + "': PGM has zero size");
    if (maxval == 0 || maxval > 255)
        throw FormatError("'" + path.string() + "': only 8-bit PGM (maxval <= 255) is supported");
    if (pos >= bytes.size() || !std::isspace(bytes[pos]))
        throw FormatError("'" + path.string() + "': malformed PGM header");
    ++pos;
    if (bytes.size() - pos < width * height)
        throw FormatError("'" + path.string() + "': truncated PGM pixel data");

    std::vector<double> data(width * height);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = bytes[pos + i];
    return GrayImage(width, height, std::move(data));
}

} // namespace

GrayImage load_grayscale(const std::filesystem::path& path) {
    const auto bytes = read_all(path);
    if (has_png_signature(bytes)) return decode_png(bytes, path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes, path);
    throw FormatError("'" + path.string() + "': unsupported image format (expected PNG or binary PGM)");
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create '" + path.string() + "'");
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    std::string pixels(img.size(), '\0');
    for (std::size_t i = 0; i < img.size(); ++i)
        pixels[i] = static_cast<char>(static_cast<unsigned char>(std::clamp(std::lround(img.pixels()[i]), 0L, 255L)));
    out.write(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

GrayImage normalize_image(const GrayImage& img) {
    const auto px = img.pixels();
    const auto [lo, hi] = std::minmax_element(px.begin(), px.end());
    if (*lo == *hi) return GrayImage::filled(img.width(), img.height(), 0.0);

    const double mu = mean(img);
    double ss = 0.0;
    for (double v : px) ss += (v - mu) * (v - mu);
    const double sd = std::sqrt(ss / static_cast<double>(px.size()));

    std::vector<double> out(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) out[i] = (px[i] - mu) / sd;
    return GrayImage(img.width(), img.height(), std::move(out));
}

} // namespace sselbp
