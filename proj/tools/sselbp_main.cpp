// sselbp: extract descriptors, classify feature sets and run the repeated
// half/half texture benchmark.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <sselbp/bench.hpp>
#include <sselbp/classifier.hpp>
#include <sselbp/descriptor.hpp>
#include <sselbp/error.hpp>
#include <sselbp/feature_io.hpp>
#include <sselbp/imgio.hpp>
#include <sselbp/parallel.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// Argument problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DescriptorArgs {
    std::string radii = "2,3,4,7";
    unsigned p = 8;
    std::size_t scales = 4;
    double sigma = std::pow(2.0, 0.25);

    void add_to(CLI::App& cmd) {
        cmd.add_option("--radii", radii, "comma separated, strictly increasing radii")->capture_default_str();
        cmd.add_option("--p", p, "neighbors per circle")->capture_default_str();
        cmd.add_option("--scales", scales, "scale-space levels")->capture_default_str();
        cmd.add_option("--sigma", sigma, "per-step gaussian sigma")->capture_default_str();
    }

    sselbp::DescriptorConfig to_config() const {
        std::vector<double> values;
        std::stringstream ss(radii);
        for (std::string item; std::getline(ss, item, ',');) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw UsageError("--radii: '" + item + "' is not a number");
            }
        }
        try {
            sselbp::DescriptorConfig config{sselbp::RadiusScheme(p, std::move(values)), scales, sigma};
            config.validate();
            return config;
        } catch (const sselbp::ParameterError& e) {
            throw UsageError(e.what());
        }
    }
};

void write_json(const fs::path& out, const json& j) {
    std::ofstream f(out);
    if (!f) throw sselbp::IoError("cannot create '" + out.string() + "'");
    f << j.dump(2) << '\n';
    if (!f) throw sselbp::IoError("write failed for '" + out.string() + "'");
}

std::size_t workers() {
    try {
        return sselbp::worker_count_from_env();
    } catch (const sselbp::ParameterError& e) {
        throw UsageError(e.what());
    }
}

// <dir>/<label>/<feature>.{json,bin}, sorted by label then file name.
std::vector<sselbp::LabeledFeature> load_feature_dir(const fs::path& dir, std::vector<fs::path>* paths = nullptr) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw sselbp::DatasetError("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> classes;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_directory()) classes.push_back(e.path());
    std::sort(classes.begin(), classes.end());

    std::vector<sselbp::LabeledFeature> out;
    for (const auto& cls : classes) {
        std::vector<fs::path> files;
        for (const auto& f : fs::directory_iterator(cls)) {
            const auto ext = f.path().extension();
            if (f.is_regular_file() && (ext == ".json" || ext == ".bin")) files.push_back(f.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            out.push_back({sselbp::read_feature(f), cls.filename().string()});
            if (paths) paths->push_back(f);
        }
    }
    if (out.empty()) throw sselbp::DatasetError("no feature files under '" + dir.string() + "'");
    return out;
}

int run_extract(const fs::path& image, const DescriptorArgs& args, const std::string& format, const fs::path& out) {
    const auto config = args.to_config();
    const auto feature = sselbp::extract(sselbp::load_grayscale(image), config);
    if (format == "bin")
        sselbp::write_feature_binary(out, feature, config);
    else
        sselbp::write_feature_json(out, feature, config);
    return 0;
}

int run_classify(const fs::path& train_dir, const fs::path& test_dir, const fs::path& out) {
    const std::size_t worker_count = workers();
    const auto gallery = load_feature_dir(train_dir);
    std::vector<fs::path> test_paths;
    const auto tests = load_feature_dir(test_dir, &test_paths);

    std::vector<std::string> predicted(tests.size());
    sselbp::parallel_for(tests.size(), worker_count,
                         [&](std::size_t i) { predicted[i] = sselbp::nnc_predict(tests[i].feature, gallery); });

    std::size_t correct = 0;
    json predictions = json::array();
    for (std::size_t i = 0; i < tests.size(); ++i) {
        correct += predicted[i] == tests[i].label ? 1 : 0;
        predictions.push_back({{"file", test_paths[i].string()}, {"label", tests[i].label}, {"predicted", predicted[i]}});
    }
    write_json(out, {{"accuracy", static_cast<double>(correct) / static_cast<double>(tests.size())},
                     {"correct", correct},
                     {"total", tests.size()},
                     {"gallery_size", gallery.size()},
                     {"predictions", predictions}});
    return 0;
}

int run_bench(const fs::path& dataset, const DescriptorArgs& args, std::size_t repeats, std::uint64_t seed,
              const std::optional<fs::path>& cache, const fs::path& out) {
    const auto config = args.to_config();
    if (repeats == 0) throw UsageError("--repeats must be at least 1");
    const std::size_t worker_count = workers();
    const auto ds = sselbp::ingest(dataset);
    sselbp::SplitProtocol protocol;
    protocol.repeats = repeats;
    protocol.seed = seed;
    const auto report = sselbp::run_benchmark(ds, config, protocol, {cache, worker_count});
    write_json(out, sselbp::report_to_json(report, ds));
    std::cout << "mean accuracy " << report.mean_accuracy << " (std " << report.std_accuracy << ") over "
              << report.per_repeat.size() << " repeats\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SSELBP texture descriptor tools"};
    app.require_subcommand(1);

    auto* extract = app.add_subcommand("extract", "compute the descriptor of one image");
    fs::path image, extract_out;
    std::string format = "json";
    DescriptorArgs extract_args;
    extract->add_option("--image", image, "PNG or binary PGM input")->required();
    extract_args.add_to(*extract);
    extract->add_option("--format", format, "output encoding")->check(CLI::IsMember({"json", "bin"}))->capture_default_str();
    extract->add_option("--out", extract_out, "output feature file")->required();

    auto* classify = app.add_subcommand("classify", "nearest-neighbor classification of feature directories");
    fs::path train_dir, test_dir, classify_out;
    classify->add_option("--train", train_dir, "<dir>/<class>/*.{json,bin} gallery")->required();
    classify->add_option("--test", test_dir, "<dir>/<class>/*.{json,bin} queries")->required();
    classify->add_option("--out", classify_out, "report JSON")->required();

    auto* benchmark = app.add_subcommand("benchmark", "repeated half/half evaluation on a dataset directory");
    fs::path dataset, bench_out;
    std::size_t repeats = 100;
    std::uint64_t seed = 42;
    std::optional<fs::path> cache;
    DescriptorArgs bench_args;
    benchmark->add_option("--dataset", dataset, "<dir>/<class>/*.{png,pgm}")->required();
    benchmark->add_option("--repeats", repeats)->capture_default_str();
    benchmark->add_option("--seed", seed)->capture_default_str();
    bench_args.add_to(*benchmark);
    benchmark->add_option("--cache", cache, "feature cache directory");
    benchmark->add_option("--out", bench_out, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*extract) return run_extract(image, extract_args, format, extract_out);
        if (*classify) return run_classify(train_dir, test_dir, classify_out);
        if (*benchmark) return run_bench(dataset, bench_args, repeats, seed, cache, bench_out);
    } catch (const UsageError& e) {
        std::cerr << "sselbp: " << e.what() << '\n';
        return kExitUsage;
    } catch (const sselbp::Error& e) {
        std::cerr << "sselbp: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "sselbp: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
