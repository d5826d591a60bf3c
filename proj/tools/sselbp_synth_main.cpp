// sselbp-synth: writes the two-class synthetic texture set (smooth ramps vs.
// per-pixel noise) used by the acceptance suite.

#include "synth.hpp"

#include <sselbp/error.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"generate the synthetic gradient/noise texture set"};
    std::filesystem::path out;
    std::size_t per_class = 20;
    std::size_t size = 64;
    std::uint64_t seed = 7;
    app.add_option("--out", out, "dataset root to create")->required();
    app.add_option("--per-class", per_class)->capture_default_str();
    app.add_option("--size", size, "image width and height")->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (size < 16 || per_class < 2) {
        std::cerr << "sselbp-synth: need --size >= 16 and --per-class >= 2\n";
        return 1;
    }
    try {
        sselbp::synth::write_two_class_set(out, per_class, size, seed);
    } catch (const sselbp::Error& e) {
        std::cerr << "sselbp-synth: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
