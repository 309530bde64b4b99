#ifndef LIPEVENT_CLI_HPP
#define LIPEVENT_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipevent/detector.hpp"
#include "lipevent/synth.hpp"

namespace lipevent::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitConfigError = 2;

// Values the user set explicitly on the command line; they win over the
// config file, which wins over the defaults.
struct DetectionOverrides {
    std::optional<std::vector<int>> ladder;
    std::optional<double> eps_silence;
    std::optional<double> eps_symmetry;
    std::optional<double> frame_rate;
    std::optional<int> smoothing_window;
    std::optional<bool> coarse_fallback;
};

// Flat key = value file mirroring the DetectionConfig field names
// (resolution_ladder, eps_silence, eps_symmetry, update_factor_k,
// frame_rate, coarse_fallback, smoothing_window). '#' starts a comment.
// Throws InvalidConfig on unknown keys or malformed values.
DetectionConfig load_detection_config(const std::string& config_path,
                                      const DetectionOverrides& overrides);

struct CommonOptions {
    DetectionConfig detection;
    std::string config_path;  // empty when none given
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double tolerance = 40.0;
    // Search-window overrides for detect; the halves are used when unset.
    std::optional<FrameWindow> opening_window;
    std::optional<FrameWindow> closing_window;
};

void write_manifest(const CommonOptions& options, const std::string& command,
                    const std::vector<std::string>& inputs);

// detect: per-sequence result JSON plus a combined summary.csv. Returns
// kExitInputError when any input fails; the others are still processed.
int cmd_detect(std::vector<std::string> inputs, const CommonOptions& options);

// evaluate: <stem>.result.json files vs <stem>.truth.json files; writes
// report.json and recall_curve.csv.
int cmd_evaluate(const std::string& results_dir, const std::string& truth_dir,
                 const CommonOptions& options);

struct SynthCliOptions {
    int count = 1;
    SpeedRange speeds{2, 4};
    std::vector<double> noise_levels{0.0};
    std::string format = "csv";  // or "json"
};

// synth: benchmark sequences plus truth sidecars and a manifest.
int cmd_synth(const SynthCliOptions& synth_options, const CommonOptions& options);

// states: finest-resolution divergence trace CSV for one sequence.
int cmd_states(const std::string& input, const CommonOptions& options);

// detnum: sequential-mode detection-count curves for a set of ladders.
int cmd_detnum(const std::vector<std::vector<int>>& ladders, int gt_lo, int gt_hi,
               const CommonOptions& options);

}  // namespace lipevent::cli

#endif  // LIPEVENT_CLI_HPP
