#ifndef LIPEVENT_ANALYSIS_HPP
#define LIPEVENT_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lipevent {

// One level of the sequential-mode cost schedule: resolution, ground-truth
// position relative to the level's reference frame, and the remainder
// indicator w (1 when gt is not a multiple of ts).
struct ScheduleStep {
    int level = 0;
    int resolution = 0;
    int relative_gt = 0;
    int w = 0;
    std::int64_t detections = 0;  // interframe classifications at this level
};

struct GtUpdate {
    int gt_next = 0;
    int w = 0;
};

// Relative ground-truth propagation across one ladder descent:
// w = 1 if gt mod ts != 0 else 0; gt_next = gt mod ts when w = 1, else ts.
// Always satisfies 1 <= gt_next <= ts.
GtUpdate gt_update(int gt, int ts);

// Per-level schedule for an event at absolute frame gt0 under the ladder.
std::vector<ScheduleStep> detection_schedule(int gt0,
                                             const std::vector<int>& ladder);

// Total interframe classifications performed by the sequential detector
// before locking an event at frame gt0.
std::int64_t detection_count(int gt0, const std::vector<int>& ladder);

struct DetnumRow {
    int gt0 = 0;
    std::vector<int> ladder;
    std::int64_t detnum = 0;
};

// Row per (gt0, ladder) over the inclusive range [gt_lo, gt_hi].
std::vector<DetnumRow> detnum_curve(int gt_lo, int gt_hi,
                                    const std::vector<std::vector<int>>& ladders);

// "30-15-7-3-1"
std::string format_ladder(const std::vector<int>& ladder);

// Parses the hyphen-joined form back into a ladder. Throws InvalidConfig.
std::vector<int> parse_ladder(const std::string& text);

}  // namespace lipevent

#endif  // LIPEVENT_ANALYSIS_HPP
