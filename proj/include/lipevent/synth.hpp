#ifndef LIPEVENT_SYNTH_HPP
#define LIPEVENT_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lipevent/geometry.hpp"
#include "lipevent/metrics.hpp"

namespace lipevent {

// Parametric speaking-lip sequence: landmarks on an ellipse in the xy-plane
// (mirror-symmetric about the yz-plane) displaced radially by a raised-cosine
// open/close profile, with optional asymmetry, rigid drift, pre-open wiggle
// and additive Gaussian noise.
struct SynthConfig {
    int landmark_count = 20;
    int frame_count = 500;
    double frame_rate = 250.0;
    double semi_axis_a = 25.0;  // mm, x direction
    double semi_axis_b = 10.0;  // mm, y direction
    int open_start = 100;
    int open_duration = 20;
    int close_end = 400;
    int close_duration = 20;
    double amplitude = 5.0;     // peak radial displacement, mm
    double noise_sigma = 0.0;   // mm
    double asymmetry = 1.0;     // left-side amplitude ratio
    double rigid_drift = 0.0;   // per-frame rigid motion bound, mm and deg
    double z_relief = 0.0;      // static out-of-plane arch, mm
    double pre_open_wiggle = 0.0;  // irregular sub-event motion, mm
    std::uint64_t seed = 0;

    void validate() const;  // throws InvalidConfig
};

struct SynthOutput {
    std::string name;
    LandmarkSequence sequence;
    GroundTruth truth;
};

// Radial displacement (mm) of the nominal profile at a frame; the analytic
// interframe divergence of a symmetric drift-free sequence is exactly the
// difference of consecutive values.
double radial_profile(const SynthConfig& config, int frame);

// Deterministic given the seed. Ground-truth labels follow the sign of the
// profile's interframe difference; truth events are (open_start, close_end).
SynthOutput generate(const SynthConfig& config);

// Interval of opening/closing ramp durations, in frames.
struct SpeedRange {
    int min_duration = 2;
    int max_duration = 4;
};

// Deterministic benchmark family: `count` sequences whose ramp durations
// sweep the speed range and whose noise levels cycle through noise_levels,
// with jittered event positions. Two ground-truth events per sequence.
std::vector<SynthOutput> benchmark_suite(int count, SpeedRange speeds,
                                         const std::vector<double>& noise_levels,
                                         std::uint64_t seed);

}  // namespace lipevent

#endif  // LIPEVENT_SYNTH_HPP
