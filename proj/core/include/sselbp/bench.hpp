#pragma once

#include "sselbp/descriptor.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sselbp {

/// Texture dataset: one immediate subdirectory of `root` per class, holding
/// .png/.pgm samples. Classes and files are kept in sorted order.
struct Dataset {
    std::filesystem::path root;
    std::map<std::string, std::vector<std::filesystem::path>> classes;

    struct Sample {
        std::filesystem::path path;
        std::size_t class_index;
        std::string label;
    };

    /// All samples, class by class in name order, files in name order.
    std::vector<Sample> samples() const;
    std::size_t sample_count() const noexcept;
};

/// Scans `root` one level deep. Throws DatasetError when root is missing,
/// has no class directories, or a class has fewer than two samples.
Dataset ingest(const std::filesystem::path& root);

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, additive Weyl step of
/// 0x9E3779B97F4A7C15 followed by the variant-13 finalizer. Bit-identical on
/// every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t next() noexcept { return mix(state_ += 0x9E3779B97F4A7C15ULL); }
    /// Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// Generator seed for one repeat: mix(seed ^ mix(repeat_index + 0x9E3779B97F4A7C15)).
std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat_index) noexcept;

/// Repeated half/half protocol: per class floor(n/2) training samples.
struct SplitProtocol {
    static constexpr double train_fraction = 0.5;
    std::size_t repeats = 100;
    std::uint64_t seed = 42;
};

/// Indices into Dataset::samples(), each list ascending.
struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// One generator per (seed, repeat_index) walks the classes in name order and
/// Fisher-Yates shuffles each class; the first floor(n/2) shuffled samples
/// train, the rest test.
Split stratified_split(const Dataset& ds, std::uint64_t seed, std::size_t repeat_index);

struct BenchReport {
    std::vector<double> per_repeat;
    double mean_accuracy = 0.0;
    /// Population standard deviation over repeats.
    double std_accuracy = 0.0;
    DescriptorConfig config;
    SplitProtocol protocol;
};

struct BenchOptions {
    /// Directory of cached binary features keyed by file hash and config.
    std::optional<std::filesystem::path> cache_dir;
    std::size_t workers = 1;
};

/// Features of every sample, in Dataset::samples() order. Load or size
/// failures are rethrown as DatasetError naming the offending file.
std::vector<SselbpFeature> extract_dataset_features(const Dataset& ds, const DescriptorConfig& config,
                                                    const BenchOptions& options = {});

/// Runs every repeat of the protocol over precomputed features.
BenchReport evaluate_protocol(const Dataset& ds, const std::vector<SselbpFeature>& features,
                              const DescriptorConfig& config, const SplitProtocol& protocol, std::size_t workers = 1);

BenchReport run_benchmark(const Dataset& ds, const DescriptorConfig& config, const SplitProtocol& protocol,
                          const BenchOptions& options = {});

/// Mean and population standard deviation.
std::pair<double, double> mean_and_std(const std::vector<double>& values);

/// {mean_accuracy, std_accuracy, per_repeat, config, protocol, dataset: {root, classes}}
nlohmann::json report_to_json(const BenchReport& report, const Dataset& ds);

} // namespace sselbp
