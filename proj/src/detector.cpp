#include "lipevent/detector.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace lipevent {

void DetectionConfig::validate() const {
    if (resolution_ladder.empty())
        throw InvalidConfig("resolution ladder is empty");
    for (std::size_t i = 0; i < resolution_ladder.size(); ++i) {
        if (resolution_ladder[i] < 1)
            throw InvalidConfig("resolution ladder entries must be positive");
        if (i > 0 && resolution_ladder[i] >= resolution_ladder[i - 1])
            throw InvalidConfig("resolution ladder must be strictly decreasing");
    }
    if (resolution_ladder.back() != 1)
        throw InvalidConfig("resolution ladder must end in 1");
    if (!(eps_silence > 0.0) || !(eps_symmetry > 0.0))
        throw InvalidConfig("thresholds must be positive");
    if (update_factor_k < 2)
        throw InvalidConfig("update factor k must be >= 2");
    if (!(frame_rate > 0.0))
        throw InvalidConfig("frame rate must be positive");
    if (smoothing_window < 1 || smoothing_window % 2 == 0)
        throw InvalidConfig("smoothing window must be odd and >= 1");
}

int next_resolution(int ts, int k) {
    const int next = (ts + k - 1) / k;
    return std::max(next, 1);
}

std::vector<int> make_resolution_ladder(int ts0, int k) {
    std::vector<int> ladder{ts0};
    while (ladder.back() > 1) ladder.push_back(next_resolution(ladder.back(), k));
    return ladder;
}

namespace {

// Scans [region.lo, region.hi] in steps of ts, classifying each consecutive
// sampled pair against the reference sphere built from the region's first
// frame. The final pair clamps to the region end when the step does not
// divide the region, so the scan always reaches hi. Returns the first pair
// classified as Opening, or nullopt. When `reversed` is set, trace indices
// are mapped back to forward time.
std::optional<FrameWindow> scan_level(const LandmarkSequence& seq, int ts,
                                      FrameWindow region,
                                      const DetectionConfig& config,
                                      TraceEntry::Phase phase, bool reversed,
                                      std::vector<TraceEntry>& trace) {
    const int m = seq.frame_count();
    const ReferenceSphere sphere = build_reference_sphere(seq.frames[region.lo]);
    for (int earlier = region.lo; earlier < region.hi; earlier += ts) {
        const int later = std::min(earlier + ts, region.hi);
        const LandmarkFrame& cur = seq.frames[later];
        const std::vector<Vec3> vectors = motion_vectors(cur, seq.frames[earlier]);
        const LeftRightPartition partition = split_left_right(cur, sphere);
        MotionSignature sig = interframe_divergence(vectors, cur, sphere, partition);
        TraceEntry entry;
        entry.phase = phase;
        entry.resolution = ts;
        if (reversed) {
            entry.earlier = m - 1 - later;
            entry.later = m - 1 - earlier;
        } else {
            entry.earlier = earlier;
            entry.later = later;
        }
        sig.source_pair = {entry.earlier, entry.later};
        entry.state = classify_state(sig, config.eps_silence, config.eps_symmetry);
        entry.signature = std::move(sig);
        const bool hit = entry.state.state == MotionState::Opening;
        trace.push_back(std::move(entry));
        if (hit) return FrameWindow{earlier, later};
    }
    return std::nullopt;
}

// Coarse-to-fine opening search in scan-time coordinates. The search region
// narrows to the pair that fired after each hit; levels that stay silent
// leave the region unchanged. A ts = 1 hit is definitive; otherwise the
// finest hit so far is used when coarse fallback is enabled.
DetectionOutcome run_search(const LandmarkSequence& seq,
                            const DetectionConfig& config, FrameWindow window,
                            TraceEntry::Phase phase, bool reversed) {
    config.validate();
    const int m = seq.frame_count();
    if (window.lo < 0 || window.hi >= m || window.lo >= window.hi)
        throw Error("search window [" + std::to_string(window.lo) + ", " +
                    std::to_string(window.hi) + "] invalid for " +
                    std::to_string(m) + " frames");
    const int ts0 = config.resolution_ladder.front();
    if (window.hi - window.lo < ts0)
        throw SequenceTooShort("window of " +
                               std::to_string(window.hi - window.lo + 1) +
                               " frames has fewer than 2 samples at resolution " +
                               std::to_string(ts0));

    DetectionOutcome out;
    FrameWindow region = window;
    std::optional<int> best_frame;
    std::optional<int> best_resolution;
    for (int ts : config.resolution_ladder) {
        const std::optional<FrameWindow> hit =
            scan_level(seq, ts, region, config, phase, reversed, out.trace);
        if (!hit) continue;
        best_frame = hit->hi;
        best_resolution = ts;
        region = *hit;
        if (ts == 1) break;
    }
    if (best_resolution && (*best_resolution == 1 || config.coarse_fallback)) {
        out.frame = reversed ? m - *best_frame : *best_frame;
        out.resolution = best_resolution;
    }
    return out;
}

}  // namespace

DetectionOutcome detect_opening(const LandmarkSequence& seq,
                                const DetectionConfig& config,
                                std::optional<FrameWindow> window) {
    const FrameWindow w = window.value_or(FrameWindow{0, seq.frame_count() - 1});
    return run_search(seq, config, w, TraceEntry::Phase::Opening, false);
}

DetectionOutcome detect_closing(const LandmarkSequence& seq,
                                const DetectionConfig& config,
                                std::optional<FrameWindow> window) {
    const int m = seq.frame_count();
    const FrameWindow w = window.value_or(FrameWindow{0, m - 1});
    // A forward-time closing is an opening of the time-reversed sequence:
    // reversal negates the motion vectors, and scanning from the sequence
    // end makes the last closing frame the first hit. Reversed frame u maps
    // back to the forward event frame m - u (the pair's forward later end).
    const LandmarkSequence rev = reverse_sequence(seq);
    const FrameWindow rw{m - 1 - w.hi, m - 1 - w.lo};
    return run_search(rev, config, rw, TraceEntry::Phase::Closing, true);
}

std::vector<LipState> framewise_states(const LandmarkSequence& seq,
                                       const DetectionConfig& config) {
    config.validate();
    const int m = seq.frame_count();
    std::vector<LipState> states(m);
    const ReferenceSphere sphere = build_reference_sphere(seq.frames.front());
    for (int t = 1; t < m; ++t) {
        const LandmarkFrame& cur = seq.frames[t];
        const std::vector<Vec3> vectors = motion_vectors(cur, seq.frames[t - 1]);
        const LeftRightPartition partition = split_left_right(cur, sphere);
        const MotionSignature sig =
            interframe_divergence(vectors, cur, sphere, partition);
        states[t] = classify_state(sig, config.eps_silence, config.eps_symmetry);
    }
    return states;
}

EventResult detect_events(const LandmarkSequence& raw,
                          const DetectionConfig& config,
                          std::optional<FrameWindow> opening_window,
                          std::optional<FrameWindow> closing_window) {
    config.validate();
    raw.validate();

    LandmarkSequence pre = pose_correct(raw, 0);
    pre = smooth_sequence(pre, config.smoothing_window);

    const int m = pre.frame_count();
    const int mid = m / 2;

    EventResult result;
    DetectionOutcome opening = detect_opening(
        pre, config, opening_window.value_or(FrameWindow{0, mid}));
    DetectionOutcome closing = detect_closing(
        pre, config, closing_window.value_or(FrameWindow{mid, m - 1}));

    result.opening_frame = opening.frame;
    result.opening_resolution = opening.resolution;
    result.closing_frame = closing.frame;
    result.closing_resolution = closing.resolution;
    result.framewise = framewise_states(pre, config);
    result.trace = std::move(opening.trace);
    result.trace.insert(result.trace.end(),
                        std::make_move_iterator(closing.trace.begin()),
                        std::make_move_iterator(closing.trace.end()));
    return result;
}

}  // namespace lipevent
