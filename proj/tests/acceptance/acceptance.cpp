// Acceptance suite: end-to-end checks of the detection pipeline, each
// printed as one PASS/FAIL line. Exit code is the number of failures.
//
//   A01  detect + evaluate run end-to-end on landmark files on disk
//   A02  divergence equals a brute-force scalar loop on 1000 random configs
//   A03  uniform radial displacement: analytic divergence and classification
//   A04  detector output is frame-exact under superimposed rigid drift
//   A05  multi-resolution search equals the exhaustive finest scan (200 events)
//   A06  noisy-suite recall ordering: multi >= single, smoothed >= noisy
//   A07  slow ramp: missed at single scale, recovered by coarse fallback
//   A08  closed-form detection counts match the instrumented detector
//   A09  metric arithmetic: exact ms conversion, monotone recall curves
//   A10  closing detection mirrors opening detection on reversed time

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lipevent/analysis.hpp"
#include "lipevent/cli.hpp"
#include "lipevent/detector.hpp"
#include "lipevent/metrics.hpp"
#include "lipevent/sequence_io.hpp"
#include "lipevent/synth.hpp"

using namespace lipevent;
namespace fs = std::filesystem;

namespace {

struct CheckFailure {
    std::string message;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure{message};
}

LandmarkFrame ring(int n, double radius, int index) {
    LandmarkFrame frame;
    frame.index = index;
    for (int i = 0; i < n; ++i) {
        const double theta = (2.0 * i + 1.0) * std::numbers::pi / n;
        frame.landmarks.emplace_back(radius * std::cos(theta),
                                     radius * std::sin(theta), 0.0);
    }
    return frame;
}

LandmarkSequence radial_sequence(int frames, int n, double radius,
                                 const std::function<double(int)>& profile) {
    LandmarkSequence seq;
    seq.frame_rate = 250.0;
    for (int t = 0; t < frames; ++t)
        seq.frames.push_back(ring(n, radius + profile(t), t));
    return seq;
}

// Scalar-loop divergence, independent of the library path.
struct BruteSignature {
    double total, left, right;
};

BruteSignature brute_divergence(const LandmarkFrame& later,
                                const LandmarkFrame& earlier, double cx,
                                double cy, double cz) {
    const int n = later.landmark_count();
    double sum = 0, left_sum = 0, right_sum = 0;
    int left_count = 0, right_count = 0;
    for (int i = 0; i < n; ++i) {
        const double mx = later.landmarks[i].x() - earlier.landmarks[i].x();
        const double my = later.landmarks[i].y() - earlier.landmarks[i].y();
        const double mz = later.landmarks[i].z() - earlier.landmarks[i].z();
        const double rx = later.landmarks[i].x() - cx;
        const double ry = later.landmarks[i].y() - cy;
        const double rz = later.landmarks[i].z() - cz;
        const double dist = std::sqrt(rx * rx + ry * ry + rz * rz);
        const double proj = (mx * rx + my * ry + mz * rz) / dist;
        sum += proj;
        if (rx < 1e-9) {
            left_sum += proj;
            ++left_count;
        }
        if (rx > -1e-9) {
            right_sum += proj;
            ++right_count;
        }
    }
    return {sum / n, left_sum / left_count, right_sum / right_count};
}

// Finest-scale forward scan with brute-force signatures and the standard
// thresholds; the reference sphere comes from the window's first frame.
std::optional<int> exhaustive_opening(const LandmarkSequence& seq, int lo,
                                      int hi, double eps_silence,
                                      double eps_symmetry) {
    double cx = 0, cy = 0, cz = 0;
    const int n = seq.frames[lo].landmark_count();
    for (const Vec3& p : seq.frames[lo].landmarks) {
        cx += p.x();
        cy += p.y();
        cz += p.z();
    }
    cx /= n;
    cy /= n;
    cz /= n;
    for (int t = lo + 1; t <= hi; ++t) {
        const BruteSignature sig =
            brute_divergence(seq.frames[t], seq.frames[t - 1], cx, cy, cz);
        if (std::abs(sig.total) < eps_silence) continue;
        if (std::abs(sig.left - sig.right) >= eps_symmetry) continue;
        if (sig.total > 0) return t;
    }
    return std::nullopt;
}

std::optional<int> exhaustive_closing(const LandmarkSequence& seq, int lo,
                                      int hi, double eps_silence,
                                      double eps_symmetry) {
    const int m = seq.frame_count();
    const LandmarkSequence rev = reverse_sequence(seq);
    const std::optional<int> hit =
        exhaustive_opening(rev, m - 1 - hi, m - 1 - lo, eps_silence, eps_symmetry);
    if (!hit) return std::nullopt;
    return m - *hit;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// ---------------------------------------------------------------------------

void a01_end_to_end_pipeline(std::string& detail) {
    TempDir data("lipevent_acc_data");
    TempDir results("lipevent_acc_results");
    TempDir eval("lipevent_acc_eval");

    const std::vector<SynthOutput> suite =
        benchmark_suite(4, SpeedRange{2, 4}, {0.0, 0.2}, 11);
    std::vector<std::string> inputs;
    for (std::size_t s = 0; s < suite.size(); ++s) {
        const fs::path base = data.path / suite[s].name;
        // Both documented on-disk formats.
        if (s % 2 == 0) {
            write_sequence_csv_file(base.string() + ".csv", suite[s].sequence);
            inputs.push_back(base.string() + ".csv");
        } else {
            write_sequence_json_file(base.string() + ".json", suite[s].sequence);
            inputs.push_back(base.string() + ".json");
        }
        write_truth_json_file(base.string() + ".truth.json", suite[s].truth);
    }

    cli::CommonOptions options;
    options.detection.smoothing_window = 1;
    options.out_dir = results.path.string();
    require(cli::cmd_detect(inputs, options) == cli::kExitOk,
            "detect exited nonzero");
    require(fs::exists(results.path / "summary.csv"), "summary.csv missing");
    require(fs::exists(results.path / (suite[0].name + ".result.json")),
            "per-sequence result missing");

    options.out_dir = eval.path.string();
    options.tolerance = 40.0;
    require(cli::cmd_evaluate(results.path.string(), data.path.string(),
                              options) == cli::kExitOk,
            "evaluate exited nonzero");
    require(fs::exists(eval.path / "report.json"), "report.json missing");
    require(fs::exists(eval.path / "recall_curve.csv"),
            "recall_curve.csv missing");

    std::ifstream report(eval.path / "report.json");
    std::stringstream ss;
    ss << report.rdbuf();
    require(ss.str().find("\"e_rr\"") != std::string::npos,
            "report lacks e_rr");
    detail = "4 sequences, csv+json inputs, detect+evaluate artifacts written";
}

void a02_divergence_oracle(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> radius(5.0, 30.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> height(-6.0, 6.0);
    std::uniform_real_distribution<double> step(-2.5, 2.5);

    double max_err = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 20;
        LandmarkFrame earlier, later;
        earlier.index = 0;
        later.index = 1;
        for (int i = 0; i < n; ++i) {
            const double r = radius(rng);
            const double a = angle(rng);
            const Vec3 p(r * std::cos(a), r * std::sin(a), height(rng));
            earlier.landmarks.push_back(p);
            later.landmarks.push_back(p + Vec3(step(rng), step(rng), step(rng)));
        }
        const ReferenceSphere sphere = build_reference_sphere(earlier);
        const LeftRightPartition part = split_left_right(later, sphere);
        const MotionSignature sig = interframe_divergence(
            motion_vectors(later, earlier), later, sphere, part);
        const BruteSignature ref =
            brute_divergence(later, earlier, sphere.center.x(),
                             sphere.center.y(), sphere.center.z());
        max_err = std::max(max_err, std::abs(sig.div_total - ref.total));
        max_err = std::max(max_err, std::abs(sig.div_left - ref.left));
        max_err = std::max(max_err, std::abs(sig.div_right - ref.right));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    require(max_err < 1e-12, "divergence deviates from the scalar loop by " +
                                 std::to_string(max_err));
    require(seconds < 5.0, "oracle comparison too slow");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "1000 configs, max err %.2e, %.2fs",
                  max_err, seconds);
    detail = buf;
}

void a03_analytic_displacement(std::string& detail) {
    const int n = 20;
    for (double d : {0.5, 1.0, 2.0}) {
        const LandmarkFrame earlier = ring(n, 25.0, 0);
        const LandmarkFrame later = ring(n, 25.0 + d, 1);
        const ReferenceSphere sphere{Vec3::Zero(), n};
        const LeftRightPartition part = split_left_right(later, sphere);
        const MotionSignature sig = interframe_divergence(
            motion_vectors(later, earlier), later, sphere, part);
        require(std::abs(sig.div_total - d) < 1e-9,
                "divergence of uniform displacement " + std::to_string(d));
        const LipState state = classify_state(sig, 1.0, 0.4);
        if (d == 0.5)
            require(state.state == MotionState::Static,
                    "0.5 mm must classify static");
        if (d == 2.0)
            require(state.state == MotionState::Opening,
                    "2.0 mm must classify opening");
    }
    detail = "d in {0.5, 1.0, 2.0} mm, errors < 1e-9, states static/opening";
}

void a04_rigid_invariance(std::string& detail) {
    DetectionConfig config;
    config.smoothing_window = 1;
    int checked = 0;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        SynthConfig clean;
        clean.amplitude = 10.0;
        clean.open_duration = 3;
        clean.close_duration = 3;
        clean.open_start = 97 + static_cast<int>(seed);
        clean.close_end = 395 + static_cast<int>(seed);
        clean.seed = seed;
        for (double drift : {2.5, 5.0}) {
            SynthConfig drifting = clean;
            drifting.rigid_drift = drift;  // bounds both mm and degrees
            const EventResult a = detect_events(generate(clean).sequence, config);
            const EventResult b =
                detect_events(generate(drifting).sequence, config);
            require(a.opening_frame == b.opening_frame &&
                        a.closing_frame == b.closing_frame,
                    "event frames changed under rigid drift");
            require(a.opening_resolution == b.opening_resolution &&
                        a.closing_resolution == b.closing_resolution,
                    "deciding resolutions changed under rigid drift");
            require(a.opening_frame && a.closing_frame,
                    "events missing on clean data");
            ++checked;
        }
    }
    detail = std::to_string(checked) +
             " clean/drifted runs frame-exact at 2.5 and 5.0 mm/deg";
}

void a05_multiresolution_equals_exhaustive(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<SynthOutput> suite =
        benchmark_suite(100, SpeedRange{2, 4}, {0.0}, 20250810);
    DetectionConfig config;
    config.smoothing_window = 1;

    int events = 0;
    for (const SynthOutput& out : suite) {
        const LandmarkSequence pre = pose_correct(out.sequence, 0);
        const int m = pre.frame_count();
        const int mid = m / 2;
        const EventResult result = detect_events(out.sequence, config);

        const std::optional<int> opening_oracle = exhaustive_opening(
            pre, 0, mid, config.eps_silence, config.eps_symmetry);
        require(opening_oracle.has_value(), out.name + ": oracle missed opening");
        require(result.opening_frame == opening_oracle,
                out.name + ": opening differs from the exhaustive scan");
        ++events;

        const std::optional<int> closing_oracle = exhaustive_closing(
            pre, mid, m - 1, config.eps_silence, config.eps_symmetry);
        require(closing_oracle.has_value(), out.name + ": oracle missed closing");
        require(result.closing_frame == closing_oracle,
                out.name + ": closing differs from the exhaustive scan");
        ++events;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    require(events == 200, "expected 200 events");
    require(seconds < 60.0, "clean benchmark run too slow");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "200/200 events exact, %.1fs", seconds);
    detail = buf;
}

double suite_recall(const std::vector<SynthOutput>& suite,
                    const DetectionConfig& config, double tolerance) {
    std::vector<EventDeviation> devs;
    for (const SynthOutput& out : suite) {
        const EventResult result = detect_events(out.sequence, config);
        if (result.opening_frame)
            devs.push_back(std::abs(static_cast<double>(*result.opening_frame) -
                                    out.truth.opening_frame));
        else
            devs.push_back(std::nullopt);
        if (result.closing_frame)
            devs.push_back(std::abs(static_cast<double>(*result.closing_frame) -
                                    out.truth.closing_frame));
        else
            devs.push_back(std::nullopt);
    }
    return event_recall_rate(devs, tolerance);
}

void a06_noisy_recall_ordering(std::string& detail) {
    const std::vector<SynthOutput> suite =
        benchmark_suite(100, SpeedRange{2, 24}, {0.3}, 777);

    DetectionConfig multi_smoothed;
    multi_smoothed.smoothing_window = 5;
    DetectionConfig multi_noisy;
    multi_noisy.smoothing_window = 1;
    DetectionConfig single_smoothed = multi_smoothed;
    single_smoothed.resolution_ladder = {1};
    DetectionConfig single_noisy = multi_noisy;
    single_noisy.resolution_ladder = {1};

    const double rr_multi_smoothed = suite_recall(suite, multi_smoothed, 40.0);
    const double rr_multi_noisy = suite_recall(suite, multi_noisy, 40.0);
    const double rr_single_smoothed = suite_recall(suite, single_smoothed, 40.0);
    const double rr_single_noisy = suite_recall(suite, single_noisy, 40.0);

    require(rr_multi_smoothed >= rr_single_smoothed,
            "multi-resolution recall below single-resolution (smoothed)");
    require(rr_multi_noisy >= rr_single_noisy,
            "multi-resolution recall below single-resolution (noisy)");
    require(rr_multi_smoothed >= rr_multi_noisy,
            "smoothed recall below noisy recall for the multi-resolution run");
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "E-RR multi %.3f/%.3f vs single %.3f/%.3f (smoothed/noisy)",
                  rr_multi_smoothed, rr_multi_noisy, rr_single_smoothed,
                  rr_single_noisy);
    detail = buf;
}

void a07_slow_speaker_fallback(std::string& detail) {
    // 0.04 mm/frame: a 30-frame aggregate of 1.2 mm crosses the silence
    // threshold while every single interframe stays far below it.
    const int t0 = 90;
    const LandmarkSequence seq = radial_sequence(250, 20, 25.0, [&](int t) {
        if (t <= t0) return 0.0;
        return 0.04 * std::min(t - t0, 60);
    });

    DetectionConfig single;
    single.smoothing_window = 1;
    single.resolution_ladder = {1};
    require(!detect_opening(seq, single).frame.has_value(),
            "single-scale ladder should miss the slow ramp");

    DetectionConfig multi;
    multi.smoothing_window = 1;
    const DetectionOutcome outcome = detect_opening(seq, multi);
    require(outcome.frame.has_value(), "default ladder missed the slow ramp");
    require(*outcome.resolution > 1, "slow ramp should resolve coarsely");
    require(std::abs(*outcome.frame - t0) <= 30,
            "fallback deviation " + std::to_string(*outcome.frame - t0) +
                " above 30 frames");

    DetectionConfig no_fallback = multi;
    no_fallback.coarse_fallback = false;
    require(!detect_opening(seq, no_fallback).frame.has_value(),
            "fallback disabled must not report the coarse event");
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "single-scale miss, fallback hit at %d (res %d), dev %d",
                  *outcome.frame, *outcome.resolution, *outcome.frame - t0);
    detail = buf;
}

void a08_detection_count_exactness(std::string& detail) {
    const std::vector<int> ladder{30, 15, 7, 3, 1};
    DetectionConfig config;
    config.smoothing_window = 1;

    int mismatches = 0;
    for (int gt0 = 1; gt0 <= 300; ++gt0) {
        const LandmarkSequence seq = radial_sequence(
            340, 12, 20.0, [&](int t) { return t >= gt0 ? 2.0 : 0.0; });
        const DetectionOutcome outcome =
            detect_opening(seq, config, FrameWindow{0, 339});
        if (!outcome.frame || *outcome.frame != gt0 ||
            static_cast<std::int64_t>(outcome.trace.size()) !=
                detection_count(gt0, ladder))
            ++mismatches;
    }
    require(mismatches == 0,
            std::to_string(mismatches) + " count mismatches in 1..300");

    // Emitted curve: coarser initial resolutions dominate for late events.
    TempDir out("lipevent_acc_detnum");
    cli::CommonOptions options;
    options.out_dir = out.path.string();
    const std::vector<std::vector<int>> ladders{
        {30, 15, 7, 3, 1}, {15, 7, 3, 1}, {7, 3, 1}, {3, 1}, {1}};
    require(cli::cmd_detnum(ladders, 1, 300, options) == cli::kExitOk,
            "detnum command failed");
    std::ifstream curve(out.path / "detnum.csv");
    std::string line;
    std::getline(curve, line);
    require(line == "gt0,ladder,detnum", "unexpected detnum header");
    std::map<std::pair<int, std::string>, long> table;
    while (std::getline(curve, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.rfind(',');
        table[{std::stoi(line.substr(0, c1)),
               line.substr(c1 + 1, c2 - c1 - 1)}] =
            std::stol(line.substr(c2 + 1));
    }
    for (int gt0 = 61; gt0 <= 300; ++gt0) {
        const long d30 = table.at({gt0, "30-15-7-3-1"});
        const long d15 = table.at({gt0, "15-7-3-1"});
        const long d7 = table.at({gt0, "7-3-1"});
        const long d3 = table.at({gt0, "3-1"});
        const long d1 = table.at({gt0, "1"});
        require(d30 <= d15 && d15 <= d7 && d7 <= d3 && d3 <= d1,
                "coarse ladder not dominant at gt0 " + std::to_string(gt0));
    }
    detail = "300/300 instrumented counts exact; ts0 dominance for gt0 > 60";
}

void a09_metric_arithmetic(std::string& detail) {
    require(time_deviation(13.175, 250.0) == 52.7,
            "13.175 frames at 250 fps must be exactly 52.7 ms");
    require(time_deviation(0.0, 250.0) == 0.0, "zero deviation");
    require(time_deviation(25.0, 250.0) == 100.0, "25 frames -> 100 ms");

    std::mt19937_64 rng(4711);
    std::uniform_real_distribution<double> dev(0.0, 90.0);
    std::bernoulli_distribution miss(0.15);
    std::vector<double> tolerances;
    for (int tol = 0; tol <= 100; tol += 5) tolerances.push_back(tol);
    for (int fixture = 0; fixture < 25; ++fixture) {
        std::vector<EventDeviation> devs;
        for (int i = 0; i < 30; ++i)
            devs.push_back(miss(rng) ? EventDeviation{} : EventDeviation{dev(rng)});
        const auto rows = recall_curve(devs, tolerances);
        for (std::size_t i = 1; i < rows.size(); ++i)
            require(rows[i].second >= rows[i - 1].second,
                    "recall curve decreased");
    }
    detail = "time conversion exact; 25 random recall curves monotone";
}

void a10_reverse_symmetry(std::string& detail) {
    const std::vector<SynthOutput> suite =
        benchmark_suite(100, SpeedRange{2, 4}, {0.0}, 20250810);
    DetectionConfig config;
    config.smoothing_window = 1;

    int events = 0;
    for (const SynthOutput& out : suite) {
        const LandmarkSequence pre = pose_correct(out.sequence, 0);
        const LandmarkSequence rev = reverse_sequence(pre);
        const int m = pre.frame_count();
        const int mid = m / 2;

        const DetectionOutcome closing =
            detect_closing(pre, config, FrameWindow{mid, m - 1});
        const DetectionOutcome mirrored_opening = detect_opening(
            rev, config, FrameWindow{m - 1 - (m - 1), m - 1 - mid});
        require(closing.frame.has_value() && mirrored_opening.frame.has_value(),
                out.name + ": closing pair undetected");
        require(*closing.frame == m - *mirrored_opening.frame,
                out.name + ": closing does not mirror reversed opening");
        ++events;

        const DetectionOutcome opening =
            detect_opening(pre, config, FrameWindow{0, mid});
        const DetectionOutcome mirrored_closing =
            detect_closing(rev, config, FrameWindow{m - 1 - mid, m - 1});
        require(opening.frame.has_value() && mirrored_closing.frame.has_value(),
                out.name + ": opening pair undetected");
        require(*opening.frame == m - *mirrored_closing.frame,
                out.name + ": opening does not mirror reversed closing");
        ++events;
    }
    require(events == 200, "expected 200 mirrored events");
    detail = "200/200 events mirror exactly across time reversal";
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        void (*body)(std::string&);
    };
    const std::vector<Criterion> criteria{
        {"A01", "pipeline runs on landmark files end-to-end",
         a01_end_to_end_pipeline},
        {"A02", "divergence matches the brute-force scalar loop",
         a02_divergence_oracle},
        {"A03", "uniform radial displacement: value and classification",
         a03_analytic_displacement},
        {"A04", "rigid drift invariance of detection", a04_rigid_invariance},
        {"A05", "multi-resolution equals exhaustive finest scan",
         a05_multiresolution_equals_exhaustive},
        {"A06", "noisy recall ordering across configurations",
         a06_noisy_recall_ordering},
        {"A07", "slow ramp recovered by coarse fallback",
         a07_slow_speaker_fallback},
        {"A08", "closed-form detection counts are exact",
         a08_detection_count_exactness},
        {"A09", "metric arithmetic and monotone recall curves",
         a09_metric_arithmetic},
        {"A10", "closing mirrors opening under time reversal",
         a10_reverse_symmetry},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail;
        try {
            criterion.body(detail);
            std::printf("[PASS] %s %s — %s\n", criterion.id, criterion.title,
                        detail.c_str());
        } catch (const CheckFailure& f) {
            ++failures;
            std::printf("[FAIL] %s %s — %s\n", criterion.id, criterion.title,
                        f.message.c_str());
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] %s %s — unexpected error: %s\n", criterion.id,
                        criterion.title, e.what());
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu acceptance checks passed\n",
                static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
