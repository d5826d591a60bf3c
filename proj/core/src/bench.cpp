#include "sselbp/bench.hpp"

#include "sselbp/classifier.hpp"
#include "sselbp/error.hpp"
#include "sselbp/feature_io.hpp"
#include "sselbp/hash.hpp"
#include "sselbp/imgio.hpp"
#include "sselbp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

namespace sselbp {

std::vector<Dataset::Sample> Dataset::samples() const {
    std::vector<Sample> out;
    std::size_t class_index = 0;
    for (const auto& [label, files] : classes) {
        for (const auto& f : files) out.push_back({f, class_index, label});
        ++class_index;
    }
    return out;
}

std::size_t Dataset::sample_count() const noexcept {
    std::size_t n = 0;
    for (const auto& [label, files] : classes) n += files.size();
    return n;
}

namespace {

bool is_image_file(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".pgm";
}

} // namespace

Dataset ingest(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw DatasetError("dataset root '" + root.string() + "' is not a directory");

    Dataset ds{root, {}};
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        std::vector<fs::path> files;
        for (const auto& f : fs::directory_iterator(entry.path()))
            if (f.is_regular_file() && is_image_file(f.path())) files.push_back(f.path());
        std::sort(files.begin(), files.end());
        ds.classes.emplace(entry.path().filename().string(), std::move(files));
    }
    if (ds.classes.empty()) throw DatasetError("no class directories under '" + root.string() + "'");
    for (const auto& [label, files] : ds.classes)
        if (files.size() < 2)
            throw DatasetError("class '" + label + "' has " + std::to_string(files.size()) +
                               " samples; at least 2 are needed for a split");
    return ds;
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat_index) noexcept {
    return SplitMix64::mix(seed ^ SplitMix64::mix(static_cast<std::uint64_t>(repeat_index) + 0x9E3779B97F4A7C15ULL));
}

Split stratified_split(const Dataset& ds, std::uint64_t seed, std::size_t repeat_index) {
    SplitMix64 rng(repeat_seed(seed, repeat_index));
    Split split;
    std::size_t offset = 0;
    for (const auto& [label, files] : ds.classes) {
        const std::size_t n = files.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), offset);
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        const std::size_t n_train = n / 2;
        split.train.insert(split.train.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
        split.test.insert(split.test.end(), order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
        offset += n;
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

SselbpFeature cached_extract(const Extractor& extractor, const std::filesystem::path& image,
                             const std::optional<std::filesystem::path>& cache_dir) {
    if (!cache_dir) return extractor(load_grayscale(image));

    const auto& config = extractor.config();
    const auto entry = *cache_dir / (hex64(hash_file(image)) + "-" + hex64(config.fingerprint()) + ".bin");
    std::error_code ec;
    if (std::filesystem::exists(entry, ec)) {
        try {
            return read_feature_binary(entry, &config);
        } catch (const Error&) {
            // unreadable or stale entry; fall through and rebuild it
        }
    }
    SselbpFeature feature = extractor(load_grayscale(image));
    auto tmp = entry;
    tmp += ".tmp" + hex64(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    write_feature_binary(tmp, feature, config);
    std::filesystem::rename(tmp, entry);
    return feature;
}

} // namespace

std::vector<SselbpFeature> extract_dataset_features(const Dataset& ds, const DescriptorConfig& config,
                                                    const BenchOptions& options) {
    const Extractor extractor(config);
    if (options.cache_dir) {
        std::error_code ec;
        std::filesystem::create_directories(*options.cache_dir, ec);
        if (ec) throw IoError("cannot create cache directory '" + options.cache_dir->string() + "': " + ec.message());
    }
    const auto samples = ds.samples();
    std::vector<SselbpFeature> features(samples.size());
    parallel_for(samples.size(), options.workers, [&](std::size_t i) {
        try {
            features[i] = cached_extract(extractor, samples[i].path, options.cache_dir);
        } catch (const Error& e) {
            throw DatasetError("'" + samples[i].path.string() + "': " + e.what());
        }
    });
    return features;
}

std::pair<double, double> mean_and_std(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / n)};
}

BenchReport evaluate_protocol(const Dataset& ds, const std::vector<SselbpFeature>& features,
                              const DescriptorConfig& config, const SplitProtocol& protocol, std::size_t workers) {
    const auto samples = ds.samples();
    if (features.size() != samples.size())
        throw ParameterError("feature count does not match the dataset sample count");
    if (protocol.repeats == 0) throw ParameterError("protocol needs at least one repeat");
    const std::size_t n = samples.size();

    // Every repeat draws its train/test pairs from the same n x n matrix.
    std::vector<double> distance(n * n, 0.0);
    parallel_for(n, workers, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) distance[i * n + j] = chi_square(features[i], features[j]);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) distance[i * n + j] = distance[j * n + i];

    BenchReport report;
    report.config = config;
    report.protocol = protocol;
    report.per_repeat.resize(protocol.repeats);
    parallel_for(protocol.repeats, workers, [&](std::size_t r) {
        const Split split = stratified_split(ds, protocol.seed, r);
        std::size_t correct = 0;
        for (std::size_t t : split.test) {
            const double* row = &distance[t * n];
            std::size_t best = split.train.front();
            double best_distance = std::numeric_limits<double>::infinity();
            for (std::size_t m : split.train) {
                if (row[m] < best_distance) {
                    best_distance = row[m];
                    best = m;
                }
            }
            if (samples[best].class_index == samples[t].class_index) ++correct;
        }
        report.per_repeat[r] = static_cast<double>(correct) / static_cast<double>(split.test.size());
    });
    std::tie(report.mean_accuracy, report.std_accuracy) = mean_and_std(report.per_repeat);
    return report;
}

BenchReport run_benchmark(const Dataset& ds, const DescriptorConfig& config, const SplitProtocol& protocol,
                          const BenchOptions& options) {
    return evaluate_protocol(ds, extract_dataset_features(ds, config, options), config, protocol, options.workers);
}

nlohmann::json report_to_json(const BenchReport& report, const Dataset& ds) {
    nlohmann::json classes = nlohmann::json::object();
    for (const auto& [label, files] : ds.classes) classes[label] = files.size();
    return {{"mean_accuracy", report.mean_accuracy},
            {"std_accuracy", report.std_accuracy},
            {"per_repeat", report.per_repeat},
            {"config", config_to_json(report.config)},
            {"protocol",
             {{"train_fraction", SplitProtocol::train_fraction},
              {"repeats", report.protocol.repeats},
              {"seed", report.protocol.seed},
              {"rng", "splitmix64"}}},
            {"dataset", {{"root", ds.root.string()}, {"classes", classes}}}};
}

} // namespace sselbp
