#ifndef LIPEVENT_DETECTOR_HPP
#define LIPEVENT_DETECTOR_HPP

#include <optional>
#include <vector>

#include "lipevent/divergence.hpp"
#include "lipevent/geometry.hpp"

namespace lipevent {

// Detection parameters. Defaults follow the reference configuration:
// resolution ladder {30,15,7,3,1}, silence threshold 1 mm, symmetry
// tolerance 0.4, 250 fps, coarse fallback on, 5-frame smoothing.
struct DetectionConfig {
    std::vector<int> resolution_ladder{30, 15, 7, 3, 1};
    double eps_silence = 1.0;
    double eps_symmetry = 0.4;
    int update_factor_k = 2;  // only used when a ladder is auto-generated
    double frame_rate = 250.0;
    bool coarse_fallback = true;
    int smoothing_window = 5;  // 1 disables smoothing

    // Throws InvalidConfig unless the ladder is strictly decreasing, ends
    // in 1 and all thresholds are positive.
    void validate() const;
};

// Next coarser-to-finer resolution step: ceil(ts / k), floored at 1.
int next_resolution(int ts, int k);

// Ladder generated by repeated application of next_resolution until 1.
std::vector<int> make_resolution_ladder(int ts0, int k);

// Inclusive frame range searched by the detector.
struct FrameWindow {
    int lo = 0;
    int hi = 0;
};

// One classified interframe pair, in scan order. For closing detection the
// scan runs on the time-reversed sequence; frame indices are mapped back to
// forward time but divergence signs are as scanned.
struct TraceEntry {
    enum class Phase { Opening, Closing };
    Phase phase = Phase::Opening;
    int resolution = 0;
    int earlier = 0;
    int later = 0;
    MotionSignature signature;
    LipState state;
};

// Outcome of a single-event search: the event frame (if any), the ladder
// resolution whose detection produced it, and the full classification log.
struct DetectionOutcome {
    std::optional<int> frame;
    std::optional<int> resolution;
    std::vector<TraceEntry> trace;
};

// Coarse-to-fine search for the first opening frame inside `window`
// (default: the whole sequence). The sequence must already be
// pose-corrected (and smoothed, if desired). At each ladder level the
// region is scanned in sampled steps from its first frame, which also
// serves as the reference frame for the divergence sphere; the last pair
// clamps to the region end so coverage always reaches it. The first
// Opening hit narrows the region to the pair that fired. A hit at ts = 1
// is the event. When finer levels stay silent after a coarse hit, the
// last hit is returned if coarse_fallback is set, otherwise no event is
// reported. Throws SequenceTooShort when the window spans fewer than two
// samples at the coarsest resolution.
DetectionOutcome detect_opening(const LandmarkSequence& seq,
                                const DetectionConfig& config,
                                std::optional<FrameWindow> window = {});

// Same search on the time-reversed sequence, so a closing event (the last
// frame whose state is closing) appears as the first opening hit scanned
// from the sequence end. The returned frame is mapped back to forward
// indexing.
DetectionOutcome detect_closing(const LandmarkSequence& seq,
                                const DetectionConfig& config,
                                std::optional<FrameWindow> window = {});

// Finest-resolution state label per frame: frame 0 is Static, frame t takes
// the classification of interframe (t-1, t) against the frame-0 reference
// sphere.
std::vector<LipState> framewise_states(const LandmarkSequence& seq,
                                       const DetectionConfig& config);

// Full pipeline result for one sequence.
struct EventResult {
    std::optional<int> opening_frame;
    std::optional<int> closing_frame;
    std::optional<int> opening_resolution;
    std::optional<int> closing_resolution;
    std::vector<LipState> framewise;
    std::vector<TraceEntry> trace;
};

// End-to-end detection on a raw sequence: pose-correct to frame 0, smooth
// per config, then search the first half for the opening event and the
// second half for the closing event. Explicit windows override the halves.
EventResult detect_events(const LandmarkSequence& raw,
                          const DetectionConfig& config,
                          std::optional<FrameWindow> opening_window = {},
                          std::optional<FrameWindow> closing_window = {});

}  // namespace lipevent

#endif  // LIPEVENT_DETECTOR_HPP
