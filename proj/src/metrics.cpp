#include "lipevent/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace lipevent {

double framewise_accuracy(std::span<const MotionState> predicted,
                          std::span<const MotionState> truth) {
    if (predicted.size() != truth.size())
        throw LengthMismatch("framewise_accuracy: " +
                             std::to_string(predicted.size()) + " vs " +
                             std::to_string(truth.size()) + " frames");
    if (predicted.empty()) throw EmptyInput("framewise_accuracy on empty lists");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++matches;
    return static_cast<double>(matches) / static_cast<double>(predicted.size());
}

double event_frame_deviation(std::optional<int> detected, int truth) {
    if (!detected)
        throw MissingEvent("deviation undefined for an undetected event");
    return std::abs(static_cast<double>(*detected) - static_cast<double>(truth));
}

double event_recall_rate(std::span<const EventDeviation> deviations,
                         double tolerance) {
    if (deviations.empty()) throw EmptyInput("event_recall_rate on empty list");
    std::size_t recalled = 0;
    for (const EventDeviation& dev : deviations)
        if (dev && *dev <= tolerance) ++recalled;
    return static_cast<double>(recalled) / static_cast<double>(deviations.size());
}

double time_deviation(double mean_dev_frames, double frame_rate) {
    if (!(frame_rate > 0.0)) throw Error("frame rate must be positive");
    return mean_dev_frames * 1000.0 / frame_rate;
}

std::vector<std::pair<double, double>> recall_curve(
    std::span<const EventDeviation> deviations,
    std::span<const double> tolerances) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(tolerances.size());
    for (double tol : tolerances)
        rows.emplace_back(tol, event_recall_rate(deviations, tol));
    return rows;
}

namespace {

std::optional<double> mean_of(const std::vector<double>& values) {
    if (values.empty()) return std::nullopt;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

}  // namespace

EvaluationReport evaluate_batch(std::span<const SequenceEvaluation> sequences,
                                double tolerance, double frame_rate) {
    if (sequences.empty()) throw EmptyInput("no sequences to evaluate");

    EvaluationReport report;
    report.tolerance = tolerance;

    std::vector<double> opening_devs;
    std::vector<double> closing_devs;
    std::vector<EventDeviation> pooled;
    std::vector<double> accuracies;

    for (const SequenceEvaluation& seq : sequences) {
        EvaluationReport::PerSequence entry;
        entry.name = seq.name;

        if (seq.detected_opening) {
            entry.opening_dev =
                event_frame_deviation(seq.detected_opening, seq.truth.opening_frame);
            opening_devs.push_back(*entry.opening_dev);
        }
        if (seq.detected_closing) {
            entry.closing_dev =
                event_frame_deviation(seq.detected_closing, seq.truth.closing_frame);
            closing_devs.push_back(*entry.closing_dev);
        }
        pooled.push_back(entry.opening_dev);
        pooled.push_back(entry.closing_dev);

        if (seq.truth.labels && !seq.predicted_states.empty()) {
            std::vector<MotionState> predicted;
            predicted.reserve(seq.predicted_states.size());
            for (const LipState& s : seq.predicted_states)
                predicted.push_back(s.state);
            entry.f_acc = framewise_accuracy(predicted, *seq.truth.labels);
            accuracies.push_back(*entry.f_acc);
        }
        report.per_sequence.push_back(std::move(entry));
    }

    report.total_events = static_cast<int>(pooled.size());
    report.missed_events = static_cast<int>(
        std::count_if(pooled.begin(), pooled.end(),
                      [](const EventDeviation& d) { return !d.has_value(); }));
    report.e_rr = event_recall_rate(pooled, tolerance);
    report.f_dev_opening = mean_of(opening_devs);
    report.f_dev_closing = mean_of(closing_devs);
    report.f_acc = mean_of(accuracies);
    if (report.f_dev_opening && report.f_dev_closing)
        report.t_dev_ms = time_deviation(
            (*report.f_dev_opening + *report.f_dev_closing) / 2.0, frame_rate);
    return report;
}

}  // namespace lipevent
