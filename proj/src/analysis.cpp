#include "lipevent/analysis.hpp"

#include <stdexcept>

#include "lipevent/errors.hpp"

namespace lipevent {

GtUpdate gt_update(int gt, int ts) {
    if (gt < 1 || ts < 1)
        throw Error("gt_update needs gt >= 1 and ts >= 1");
    const int rem = gt % ts;
    if (rem != 0) return {rem, 1};
    return {ts, 0};
}

std::vector<ScheduleStep> detection_schedule(int gt0,
                                             const std::vector<int>& ladder) {
    if (gt0 < 1) throw Error("detection_schedule needs gt0 >= 1");
    std::vector<ScheduleStep> steps;
    steps.reserve(ladder.size());
    int gt = gt0;
    for (std::size_t level = 0; level < ladder.size(); ++level) {
        const int ts = ladder[level];
        ScheduleStep step;
        step.level = static_cast<int>(level);
        step.resolution = ts;
        step.relative_gt = gt;
        const GtUpdate update = gt_update(gt, ts);
        step.w = update.w;
        // Classifications at this level: the scan stops at the pair whose
        // later sample first reaches or passes the event.
        step.detections = update.w ? (gt / ts + 1) : (gt / ts);
        steps.push_back(step);
        gt = update.gt_next;
    }
    return steps;
}

std::int64_t detection_count(int gt0, const std::vector<int>& ladder) {
    std::int64_t total = 0;
    for (const ScheduleStep& step : detection_schedule(gt0, ladder))
        total += step.detections;
    return total;
}

std::vector<DetnumRow> detnum_curve(int gt_lo, int gt_hi,
                                    const std::vector<std::vector<int>>& ladders) {
    if (gt_lo < 1 || gt_hi < gt_lo)
        throw EmptyInput("detnum_curve needs a non-empty range with gt_lo >= 1");
    std::vector<DetnumRow> rows;
    rows.reserve(static_cast<std::size_t>(gt_hi - gt_lo + 1) * ladders.size());
    for (int gt0 = gt_lo; gt0 <= gt_hi; ++gt0)
        for (const std::vector<int>& ladder : ladders)
            rows.push_back({gt0, ladder, detection_count(gt0, ladder)});
    return rows;
}

std::string format_ladder(const std::vector<int>& ladder) {
    std::string out;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (i > 0) out += '-';
        out += std::to_string(ladder[i]);
    }
    return out;
}

std::vector<int> parse_ladder(const std::string& text) {
    std::vector<int> ladder;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t dash = text.find('-', pos);
        const std::string token =
            text.substr(pos, dash == std::string::npos ? std::string::npos
                                                       : dash - pos);
        try {
            std::size_t used = 0;
            const int value = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            ladder.push_back(value);
        } catch (const std::exception&) {
            throw InvalidConfig("bad resolution ladder '" + text + "'");
        }
        if (dash == std::string::npos) break;
        pos = dash + 1;
    }
    return ladder;
}

}  // namespace lipevent
