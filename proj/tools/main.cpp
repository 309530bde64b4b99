// Command-line front end: detect / evaluate / synth / states / detnum.

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

#include "lipevent/analysis.hpp"
#include "lipevent/cli.hpp"

namespace {

using namespace lipevent;

std::vector<double> parse_noise_list(const std::string& text) {
    std::vector<double> levels;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            levels.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw InvalidConfig("bad noise level '" + token + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return levels;
}

FrameWindow parse_window(const std::string& text) {
    const std::size_t dash = text.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= text.size())
        throw InvalidConfig("bad frame window '" + text + "' (expected LO-HI)");
    try {
        return FrameWindow{std::stoi(text.substr(0, dash)),
                           std::stoi(text.substr(dash + 1))};
    } catch (const std::exception&) {
        throw InvalidConfig("bad frame window '" + text + "' (expected LO-HI)");
    }
}

std::vector<std::vector<int>> parse_ladder_list(const std::string& text) {
    std::vector<std::vector<int>> ladders;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        ladders.push_back(parse_ladder(token));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return ladders;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3D lip opening/closing event detection from landmark motion "
                 "divergence"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::string ladder_text;
    int smoothing_window = 5;
    double eps_silence = 1.0;
    double eps_symmetry = 0.4;
    double fps = 250.0;
    double tolerance = 40.0;
    bool no_fallback = false;

    app.add_option("--config", config_path, "detection config file (key = value)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--ladder", ladder_text,
                   "resolution ladder, e.g. 30-15-7-3-1 (or 1 for single scale)");
    app.add_option("--smooth", smoothing_window,
                   "smoothing window in frames (odd; 1 disables)");
    app.add_option("--eps-silence", eps_silence, "silence threshold, mm");
    app.add_option("--eps-symmetry", eps_symmetry, "symmetry tolerance, mm");
    app.add_option("--fps", fps, "frame rate for formats without one");
    app.add_option("--tolerance", tolerance, "recall tolerance in frames");
    app.add_flag("--no-fallback", no_fallback,
                 "reject events that only fire at coarse resolutions");

    auto* detect = app.add_subcommand("detect", "detect lip events in sequences");
    std::vector<std::string> detect_inputs;
    std::string open_window_text;
    std::string close_window_text;
    detect->add_option("inputs", detect_inputs,
                       "sequence files or directories (.csv/.json)")
        ->required();
    detect->add_option("--open-window", open_window_text,
                       "opening search window LO-HI (default: first half)");
    detect->add_option("--close-window", close_window_text,
                       "closing search window LO-HI (default: second half)");

    auto* evaluate = app.add_subcommand("evaluate", "score results against truth");
    std::string results_dir;
    std::string truth_dir;
    evaluate->add_option("--results", results_dir, "directory of .result.json files")
        ->required();
    evaluate->add_option("--truth", truth_dir, "directory of .truth.json files")
        ->required();

    auto* synth = app.add_subcommand("synth", "generate benchmark sequences");
    cli::SynthCliOptions synth_options;
    std::string noise_text = "0";
    synth->add_option("--count", synth_options.count, "number of sequences");
    synth->add_option("--speed-min", synth_options.speeds.min_duration,
                      "shortest ramp duration, frames");
    synth->add_option("--speed-max", synth_options.speeds.max_duration,
                      "longest ramp duration, frames");
    synth->add_option("--noise", noise_text, "comma-separated noise sigmas, mm");
    synth->add_option("--format", synth_options.format, "csv or json");

    auto* states = app.add_subcommand("states", "per-frame divergence trace");
    std::string states_input;
    states->add_option("input", states_input, "sequence file")->required();

    auto* detnum = app.add_subcommand("detnum", "sequential detection-count curves");
    std::string ladders_text = "30-15-7-3-1,15-7-3-1,7-3-1,3-1,1";
    int gt_lo = 1;
    int gt_hi = 300;
    detnum->add_option("--ladders", ladders_text, "comma-separated ladders");
    detnum->add_option("--gt-lo", gt_lo, "first event frame");
    detnum->add_option("--gt-hi", gt_hi, "last event frame");

    CLI11_PARSE(app, argc, argv);

    try {
        cli::DetectionOverrides overrides;
        if (app.count("--ladder")) overrides.ladder = parse_ladder(ladder_text);
        if (app.count("--smooth")) overrides.smoothing_window = smoothing_window;
        if (app.count("--eps-silence")) overrides.eps_silence = eps_silence;
        if (app.count("--eps-symmetry")) overrides.eps_symmetry = eps_symmetry;
        if (app.count("--fps")) overrides.frame_rate = fps;
        if (no_fallback) overrides.coarse_fallback = false;

        cli::CommonOptions options;
        options.detection = cli::load_detection_config(config_path, overrides);
        options.config_path = config_path;
        options.out_dir = out_dir;
        options.seed = seed;
        options.tolerance = tolerance;

        if (detect->parsed()) {
            if (detect->count("--open-window"))
                options.opening_window = parse_window(open_window_text);
            if (detect->count("--close-window"))
                options.closing_window = parse_window(close_window_text);
            return cli::cmd_detect(detect_inputs, options);
        }
        if (evaluate->parsed())
            return cli::cmd_evaluate(results_dir, truth_dir, options);
        if (synth->parsed()) {
            synth_options.noise_levels = parse_noise_list(noise_text);
            return cli::cmd_synth(synth_options, options);
        }
        if (states->parsed()) return cli::cmd_states(states_input, options);
        if (detnum->parsed())
            return cli::cmd_detnum(parse_ladder_list(ladders_text), gt_lo, gt_hi,
                                   options);
        std::cerr << "no command given\n";
        return cli::kExitConfigError;
    } catch (const InvalidConfig& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return cli::kExitConfigError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitInputError;
    }
}
