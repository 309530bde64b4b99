#ifndef LIPEVENT_METRICS_HPP
#define LIPEVENT_METRICS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lipevent/divergence.hpp"

namespace lipevent {

// Manually (or synthetically) labeled event frames for one sequence, with
// optional per-frame state labels.
struct GroundTruth {
    int opening_frame = 0;
    int closing_frame = 0;
    std::optional<std::vector<MotionState>> labels;
};

// Fraction of frames whose predicted state matches the reference state.
// Throws LengthMismatch.
double framewise_accuracy(std::span<const MotionState> predicted,
                          std::span<const MotionState> truth);

// |detected - truth| in frames. Throws MissingEvent when detected is absent.
double event_frame_deviation(std::optional<int> detected, int truth);

// A detected event's deviation, or nullopt for a miss.
using EventDeviation = std::optional<double>;

// Fraction of events whose deviation is within tolerance; misses count as
// failures. Throws EmptyInput on an empty list.
double event_recall_rate(std::span<const EventDeviation> deviations,
                         double tolerance);

// Mean deviation in frames converted to milliseconds at the given rate.
double time_deviation(double mean_dev_frames, double frame_rate);

// (tolerance, recall) rows, one per tolerance, nondecreasing in recall.
std::vector<std::pair<double, double>> recall_curve(
    std::span<const EventDeviation> deviations,
    std::span<const double> tolerances);

// Aggregated evaluation over a set of sequences. Opening and closing
// deviations are averaged separately (misses excluded from the means) and
// pooled for the recall rate; the time deviation converts the mean of the
// two per-event means.
struct EvaluationReport {
    std::optional<double> f_acc;
    std::optional<double> f_dev_opening;
    std::optional<double> f_dev_closing;
    double e_rr = 0.0;
    std::optional<double> t_dev_ms;
    double tolerance = 0.0;
    int total_events = 0;
    int missed_events = 0;

    struct PerSequence {
        std::string name;
        EventDeviation opening_dev;
        EventDeviation closing_dev;
        std::optional<double> f_acc;
    };
    std::vector<PerSequence> per_sequence;
};

struct SequenceEvaluation {
    std::string name;
    std::optional<int> detected_opening;
    std::optional<int> detected_closing;
    std::vector<LipState> predicted_states;  // may be empty
    GroundTruth truth;
};

// Builds the report for one batch. Throws EmptyInput when no sequences are
// given.
EvaluationReport evaluate_batch(std::span<const SequenceEvaluation> sequences,
                                double tolerance, double frame_rate);

}  // namespace lipevent

#endif  // LIPEVENT_METRICS_HPP
