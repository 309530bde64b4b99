#include "lipevent/cli.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "lipevent/analysis.hpp"
#include "lipevent/metrics.hpp"
#include "lipevent/sequence_io.hpp"

namespace lipevent::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

double parse_double_value(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("bad value for " + key + ": '" + value + "'");
    }
}

int parse_int_value(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("bad value for " + key + ": '" + value + "'");
    }
}

bool parse_bool_value(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw InvalidConfig("bad value for " + key + ": '" + value + "'");
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir);
}

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

json states_to_json(const std::vector<LipState>& states) {
    json out = json::array();
    for (const LipState& s : states) out.push_back(to_string(s.state));
    return out;
}

json optional_to_json(const std::optional<int>& value) {
    if (value) return *value;
    return nullptr;
}

json optional_to_json(const std::optional<double>& value) {
    if (value) return *value;
    return nullptr;
}

}  // namespace

DetectionConfig load_detection_config(const std::string& config_path,
                                      const DetectionOverrides& overrides) {
    DetectionConfig config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw InvalidConfig("cannot open config file " + config_path);
        std::string line;
        std::size_t row = 0;
        while (std::getline(in, line)) {
            ++row;
            const auto comment = line.find('#');
            if (comment != std::string::npos) line = line.substr(0, comment);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw InvalidConfig(config_path + " line " + std::to_string(row) +
                                    ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key == "resolution_ladder")
                config.resolution_ladder = parse_ladder(value);
            else if (key == "eps_silence")
                config.eps_silence = parse_double_value(key, value);
            else if (key == "eps_symmetry")
                config.eps_symmetry = parse_double_value(key, value);
            else if (key == "update_factor_k")
                config.update_factor_k = parse_int_value(key, value);
            else if (key == "frame_rate")
                config.frame_rate = parse_double_value(key, value);
            else if (key == "coarse_fallback")
                config.coarse_fallback = parse_bool_value(key, value);
            else if (key == "smoothing_window")
                config.smoothing_window = parse_int_value(key, value);
            else
                throw InvalidConfig(config_path + " line " + std::to_string(row) +
                                    ": unknown key '" + key + "'");
        }
    }
    if (overrides.ladder) config.resolution_ladder = *overrides.ladder;
    if (overrides.eps_silence) config.eps_silence = *overrides.eps_silence;
    if (overrides.eps_symmetry) config.eps_symmetry = *overrides.eps_symmetry;
    if (overrides.frame_rate) config.frame_rate = *overrides.frame_rate;
    if (overrides.smoothing_window)
        config.smoothing_window = *overrides.smoothing_window;
    if (overrides.coarse_fallback) config.coarse_fallback = *overrides.coarse_fallback;
    config.validate();
    return config;
}

void write_manifest(const CommonOptions& options, const std::string& command,
                    const std::vector<std::string>& inputs) {
    json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["config_file"] = options.config_path.empty()
                             ? json(nullptr)
                             : json(options.config_path);
    doc["output_dir"] = options.out_dir;
    doc["seed"] = options.seed;
    std::ofstream out = open_output(fs::path(options.out_dir) / "manifest.json");
    out << doc.dump(2) << '\n';
}

namespace {

struct DetectJob {
    std::string input;
    std::optional<EventResult> result;
    std::string error;
};

void run_detect_jobs(std::vector<DetectJob>& jobs, const DetectionConfig& config,
                     std::optional<FrameWindow> opening_window,
                     std::optional<FrameWindow> closing_window) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers =
        std::min<unsigned>(hw, static_cast<unsigned>(jobs.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                const LandmarkSequence seq =
                    read_sequence_file(jobs[i].input, config.frame_rate);
                jobs[i].result =
                    detect_events(seq, config, opening_window, closing_window);
            } catch (const Error& e) {
                jobs[i].error = e.what();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
}

bool is_sequence_file(const fs::path& path) {
    const std::string name = path.filename().string();
    if (name.ends_with(".truth.json") || name.ends_with(".result.json") ||
        name == "manifest.json" || name == "summary.csv")
        return false;
    return name.ends_with(".csv") || name.ends_with(".json");
}

// Directories expand to the sequence files they contain.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const std::string& input : inputs) {
        if (fs::is_directory(input)) {
            for (const auto& entry : fs::directory_iterator(input))
                if (entry.is_regular_file() && is_sequence_file(entry.path()))
                    files.push_back(entry.path().string());
        } else {
            files.push_back(input);
        }
    }
    return files;
}

}  // namespace

int cmd_detect(std::vector<std::string> inputs, const CommonOptions& options) {
    inputs = expand_inputs(inputs);
    if (inputs.empty()) {
        std::cerr << "detect: no input files\n";
        return kExitInputError;
    }
    ensure_out_dir(options.out_dir);
    std::sort(inputs.begin(), inputs.end());

    std::vector<DetectJob> jobs;
    jobs.reserve(inputs.size());
    for (const std::string& input : inputs) jobs.push_back({input, {}, {}});
    run_detect_jobs(jobs, options.detection, options.opening_window,
                    options.closing_window);

    std::ofstream summary = open_output(fs::path(options.out_dir) / "summary.csv");
    summary << "sequence,opening,closing,open_res,close_res\n";
    bool any_failed = false;
    for (const DetectJob& job : jobs) {
        const std::string stem = stem_of(job.input);
        if (!job.result) {
            std::cerr << "detect: " << job.error << '\n';
            any_failed = true;
            continue;
        }
        const EventResult& r = *job.result;
        json doc;
        doc["sequence"] = stem;
        doc["opening_frame"] = optional_to_json(r.opening_frame);
        doc["closing_frame"] = optional_to_json(r.closing_frame);
        doc["opening_resolution"] = optional_to_json(r.opening_resolution);
        doc["closing_resolution"] = optional_to_json(r.closing_resolution);
        doc["states"] = states_to_json(r.framewise);
        std::ofstream out =
            open_output(fs::path(options.out_dir) / (stem + ".result.json"));
        out << doc.dump(2) << '\n';

        auto cell = [](const std::optional<int>& v) {
            return v ? std::to_string(*v) : std::string();
        };
        summary << stem << ',' << cell(r.opening_frame) << ','
                << cell(r.closing_frame) << ',' << cell(r.opening_resolution)
                << ',' << cell(r.closing_resolution) << '\n';
    }
    write_manifest(options, "detect", inputs);
    return any_failed ? kExitInputError : kExitOk;
}

namespace {

MotionState state_from_string(const std::string& text) {
    if (text == "static") return MotionState::Static;
    if (text == "opening") return MotionState::Opening;
    if (text == "closing") return MotionState::Closing;
    throw ParseError("unknown state label '" + text + "'");
}

SequenceEvaluation load_result_for_eval(const fs::path& result_path,
                                        const fs::path& truth_dir) {
    std::ifstream in(result_path);
    if (!in) throw ParseError("cannot open " + result_path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(result_path.string() + ": bad JSON: " + e.what());
    }

    SequenceEvaluation eval;
    eval.name = doc.value("sequence", result_path.stem().stem().string());
    if (doc.contains("opening_frame") && !doc["opening_frame"].is_null())
        eval.detected_opening = doc["opening_frame"].get<int>();
    if (doc.contains("closing_frame") && !doc["closing_frame"].is_null())
        eval.detected_closing = doc["closing_frame"].get<int>();
    if (doc.contains("states"))
        for (const json& js : doc["states"])
            eval.predicted_states.push_back(
                {state_from_string(js.get<std::string>()), Rejection::None});

    const fs::path truth_path = truth_dir / (eval.name + ".truth.json");
    if (!fs::exists(truth_path))
        throw UnmatchedSequence("no ground truth for '" + eval.name + "' (" +
                                truth_path.string() + ")");
    eval.truth = read_truth_json_file(truth_path.string());
    return eval;
}

}  // namespace

int cmd_evaluate(const std::string& results_dir, const std::string& truth_dir,
                 const CommonOptions& options) {
    std::vector<fs::path> result_files;
    if (fs::is_directory(results_dir)) {
        for (const auto& entry : fs::directory_iterator(results_dir))
            if (entry.path().string().ends_with(".result.json"))
                result_files.push_back(entry.path());
    } else if (fs::exists(results_dir)) {
        result_files.push_back(results_dir);
    }
    std::sort(result_files.begin(), result_files.end());
    if (result_files.empty()) {
        std::cerr << "evaluate: no .result.json files in " << results_dir << '\n';
        return kExitInputError;
    }

    std::vector<SequenceEvaluation> evals;
    evals.reserve(result_files.size());
    for (const fs::path& path : result_files)
        evals.push_back(load_result_for_eval(path, truth_dir));

    double frame_rate = options.detection.frame_rate;
    const EvaluationReport report =
        evaluate_batch(evals, options.tolerance, frame_rate);

    ensure_out_dir(options.out_dir);
    json doc;
    doc["f_acc"] = optional_to_json(report.f_acc);
    doc["f_dev_opening"] = optional_to_json(report.f_dev_opening);
    doc["f_dev_closing"] = optional_to_json(report.f_dev_closing);
    doc["e_rr"] = report.e_rr;
    doc["t_dev_ms"] = optional_to_json(report.t_dev_ms);
    doc["tolerance"] = report.tolerance;
    doc["total_events"] = report.total_events;
    doc["missed_events"] = report.missed_events;
    json per_seq = json::array();
    for (const auto& entry : report.per_sequence) {
        json js;
        js["sequence"] = entry.name;
        js["opening_dev"] = optional_to_json(entry.opening_dev);
        js["closing_dev"] = optional_to_json(entry.closing_dev);
        js["f_acc"] = optional_to_json(entry.f_acc);
        per_seq.push_back(std::move(js));
    }
    doc["per_sequence"] = std::move(per_seq);
    std::ofstream out = open_output(fs::path(options.out_dir) / "report.json");
    out << doc.dump(2) << '\n';

    // Recall sweep covering the tolerance range of interest.
    std::vector<EventDeviation> pooled;
    for (const auto& entry : report.per_sequence) {
        pooled.push_back(entry.opening_dev);
        pooled.push_back(entry.closing_dev);
    }
    std::vector<double> tolerances;
    for (int tol = 0; tol <= 100; tol += 5) tolerances.push_back(tol);
    std::ofstream curve =
        open_output(fs::path(options.out_dir) / "recall_curve.csv");
    curve << "tolerance,e_rr\n";
    for (const auto& [tol, err] : recall_curve(pooled, tolerances))
        curve << format_double(tol) << ',' << format_double(err) << '\n';

    std::vector<std::string> input_names;
    for (const fs::path& p : result_files) input_names.push_back(p.string());
    write_manifest(options, "evaluate", input_names);

    std::cout << "evaluated " << report.per_sequence.size() << " sequences, "
              << report.total_events << " events: e_rr=" << report.e_rr
              << " at tolerance " << report.tolerance << " frames\n";
    return kExitOk;
}

int cmd_synth(const SynthCliOptions& synth_options, const CommonOptions& options) {
    if (synth_options.format != "csv" && synth_options.format != "json")
        throw InvalidConfig("synth format must be csv or json");
    ensure_out_dir(options.out_dir);
    const std::vector<SynthOutput> suite =
        benchmark_suite(synth_options.count, synth_options.speeds,
                        synth_options.noise_levels, options.seed);
    std::vector<std::string> written;
    for (const SynthOutput& out : suite) {
        const fs::path base = fs::path(options.out_dir) / out.name;
        if (synth_options.format == "csv")
            write_sequence_csv_file(base.string() + ".csv", out.sequence);
        else
            write_sequence_json_file(base.string() + ".json", out.sequence);
        write_truth_json_file(base.string() + ".truth.json", out.truth);
        written.push_back(out.name);
    }
    write_manifest(options, "synth", written);
    std::cout << "wrote " << suite.size() << " sequences to " << options.out_dir
              << '\n';
    return kExitOk;
}

int cmd_states(const std::string& input, const CommonOptions& options) {
    ensure_out_dir(options.out_dir);
    const DetectionConfig& config = options.detection;
    LandmarkSequence seq = read_sequence_file(input, config.frame_rate);
    seq = pose_correct(seq, 0);
    seq = smooth_sequence(seq, config.smoothing_window);

    const ReferenceSphere sphere = build_reference_sphere(seq.frames.front());
    std::ofstream out = open_output(fs::path(options.out_dir) /
                                    (stem_of(input) + ".states.csv"));
    out << "frame,div_total,div_left,div_right,state\n";
    out << "0,0,0,0,static\n";
    for (int t = 1; t < seq.frame_count(); ++t) {
        const LandmarkFrame& cur = seq.frames[t];
        const std::vector<Vec3> vectors = motion_vectors(cur, seq.frames[t - 1]);
        const LeftRightPartition partition = split_left_right(cur, sphere);
        const MotionSignature sig =
            interframe_divergence(vectors, cur, sphere, partition);
        const LipState state =
            classify_state(sig, config.eps_silence, config.eps_symmetry);
        out << t << ',' << format_double(sig.div_total) << ','
            << format_double(sig.div_left) << ',' << format_double(sig.div_right)
            << ',' << to_string(state.state) << '\n';
    }
    write_manifest(options, "states", {input});
    return kExitOk;
}

int cmd_detnum(const std::vector<std::vector<int>>& ladders, int gt_lo, int gt_hi,
               const CommonOptions& options) {
    for (const std::vector<int>& ladder : ladders) {
        DetectionConfig probe = options.detection;
        probe.resolution_ladder = ladder;
        probe.validate();
    }
    ensure_out_dir(options.out_dir);
    std::ofstream out = open_output(fs::path(options.out_dir) / "detnum.csv");
    out << "gt0,ladder,detnum\n";
    for (const DetnumRow& row : detnum_curve(gt_lo, gt_hi, ladders))
        out << row.gt0 << ',' << format_ladder(row.ladder) << ',' << row.detnum
            << '\n';
    std::vector<std::string> names;
    for (const std::vector<int>& ladder : ladders)
        names.push_back(format_ladder(ladder));
    write_manifest(options, "detnum", names);
    return kExitOk;
}

}  // namespace lipevent::cli
