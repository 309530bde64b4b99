#include "lipevent/synth.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace lipevent {

namespace {
constexpr double kPi = std::numbers::pi;
}

void SynthConfig::validate() const {
    if (landmark_count < 4)
        throw InvalidConfig("landmark_count must be >= 4");
    if (landmark_count % 2 != 0)
        throw InvalidConfig("landmark_count must be even to keep the lip "
                            "mirror-symmetric");
    if (frame_count < 2) throw InvalidConfig("frame_count must be >= 2");
    if (!(frame_rate > 0.0)) throw InvalidConfig("frame_rate must be positive");
    if (!(semi_axis_a > 0.0) || !(semi_axis_b > 0.0))
        throw InvalidConfig("ellipse semi-axes must be positive");
    if (!(amplitude > 0.0)) throw InvalidConfig("amplitude must be positive");
    if (open_duration < 1 || close_duration < 1)
        throw InvalidConfig("ramp durations must be >= 1 frame");
    if (open_start < 0 || close_end >= frame_count)
        throw InvalidConfig("event frames outside the sequence");
    if (open_start + open_duration > close_end - close_duration)
        throw InvalidConfig("opening ramp must finish before the closing ramp "
                            "starts");
    if (noise_sigma < 0.0 || rigid_drift < 0.0 || pre_open_wiggle < 0.0)
        throw InvalidConfig("noise, drift and wiggle magnitudes must be >= 0");
    if (!(asymmetry > 0.0)) throw InvalidConfig("asymmetry ratio must be positive");
}

double radial_profile(const SynthConfig& c, int frame) {
    const double t = static_cast<double>(frame);
    double r = 0.0;
    if (frame <= c.open_start) {
        r = 0.0;
    } else if (frame < c.open_start + c.open_duration) {
        r = c.amplitude / 2.0 *
            (1.0 - std::cos(kPi * (t - c.open_start) / c.open_duration));
    } else if (frame <= c.close_end - c.close_duration) {
        r = c.amplitude;
    } else if (frame < c.close_end) {
        const double cs = static_cast<double>(c.close_end - c.close_duration);
        r = c.amplitude / 2.0 * (1.0 + std::cos(kPi * (t - cs) / c.close_duration));
    }

    // Irregular pre-event deformation: one full sinusoid cycle that starts
    // and ends at zero displacement, well before the opening ramp.
    if (c.pre_open_wiggle > 0.0) {
        const int wiggle_end = c.open_start - 8;
        const int wiggle_start = wiggle_end - 8;
        if (frame > wiggle_start && frame < wiggle_end)
            r += c.pre_open_wiggle *
                 std::sin(2.0 * kPi * (t - wiggle_start) / 8.0);
    }
    return r;
}

namespace {

// Nominal profile without the wiggle; ground-truth labels follow its
// interframe difference sign.
double nominal_profile(const SynthConfig& c, int frame) {
    SynthConfig plain = c;
    plain.pre_open_wiggle = 0.0;
    return radial_profile(plain, frame);
}

struct DriftParams {
    Vec3 axis = Vec3::UnitZ();
    double translation_period[3] = {64.0, 96.0, 80.0};
    double translation_phase[3] = {0.0, 0.0, 0.0};
    double rotation_period = 72.0;
    double rotation_phase = 0.0;
};

RigidTransform drift_transform(const DriftParams& p, double magnitude, int frame) {
    RigidTransform out;
    if (magnitude <= 0.0) return out;
    const double t = static_cast<double>(frame);
    for (int k = 0; k < 3; ++k)
        out.translation[k] = magnitude / std::sqrt(3.0) *
                             std::sin(2.0 * kPi * t / p.translation_period[k] +
                                      p.translation_phase[k]);
    const double angle_deg =
        magnitude * std::sin(2.0 * kPi * t / p.rotation_period + p.rotation_phase);
    out.rotation =
        Eigen::AngleAxisd(angle_deg * kPi / 180.0, p.axis).toRotationMatrix();
    return out;
}

}  // namespace

SynthOutput generate(const SynthConfig& config) {
    config.validate();

    const int n = config.landmark_count;
    const int m = config.frame_count;

    std::vector<Vec3> base(n);
    std::vector<Vec3> radial(n);
    std::vector<bool> left(n);
    for (int i = 0; i < n; ++i) {
        const double theta = (2.0 * i + 1.0) * kPi / n;
        base[i] = Vec3(config.semi_axis_a * std::cos(theta),
                       config.semi_axis_b * std::sin(theta),
                       config.z_relief * std::sin(theta));
        radial[i] = base[i].normalized();
        left[i] = base[i].x() < 0.0;
    }

    std::mt19937_64 rng(config.seed);
    DriftParams drift;
    if (config.rigid_drift > 0.0) {
        std::uniform_real_distribution<double> period(40.0, 160.0);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
        std::normal_distribution<double> unit;
        Vec3 axis;
        for (int k = 0; k < 3; ++k) axis[k] = unit(rng);
        drift.axis = axis.norm() > 1e-12 ? Vec3(axis.normalized()) : Vec3::UnitZ();
        for (int k = 0; k < 3; ++k) {
            drift.translation_period[k] = period(rng);
            drift.translation_phase[k] = phase(rng);
        }
        drift.rotation_period = period(rng);
        drift.rotation_phase = phase(rng);
    }
    std::normal_distribution<double> noise(0.0, 1.0);

    SynthOutput out;
    out.name = "synth";
    out.sequence.frame_rate = config.frame_rate;
    out.sequence.frames.resize(m);
    for (int t = 0; t < m; ++t) {
        LandmarkFrame& frame = out.sequence.frames[t];
        frame.index = t;
        frame.landmarks.resize(n);
        const double r = radial_profile(config, t);
        const RigidTransform pose =
            drift_transform(drift, config.rigid_drift, t);
        for (int i = 0; i < n; ++i) {
            const double scale = left[i] ? config.asymmetry : 1.0;
            Vec3 p = base[i] + r * scale * radial[i];
            if (config.rigid_drift > 0.0) p = pose.apply(p);
            if (config.noise_sigma > 0.0)
                for (int k = 0; k < 3; ++k) p[k] += config.noise_sigma * noise(rng);
            frame.landmarks[i] = p;
        }
    }

    out.truth.opening_frame = config.open_start;
    out.truth.closing_frame = config.close_end;
    std::vector<MotionState> labels(m, MotionState::Static);
    for (int t = 1; t < m; ++t) {
        const double diff = nominal_profile(config, t) - nominal_profile(config, t - 1);
        if (diff > 0.0)
            labels[t] = MotionState::Opening;
        else if (diff < 0.0)
            labels[t] = MotionState::Closing;
    }
    out.truth.labels = std::move(labels);
    return out;
}

std::vector<SynthOutput> benchmark_suite(int count, SpeedRange speeds,
                                         const std::vector<double>& noise_levels,
                                         std::uint64_t seed) {
    if (count < 1) throw InvalidConfig("benchmark_suite needs count >= 1");
    if (speeds.min_duration < 1 || speeds.max_duration < speeds.min_duration)
        throw InvalidConfig("bad speed range");

    std::vector<SynthOutput> suite;
    suite.reserve(count);
    const int span = speeds.max_duration - speeds.min_duration;
    for (int i = 0; i < count; ++i) {
        SynthConfig config;
        config.landmark_count = 20;
        config.frame_count = 500;
        config.frame_rate = 250.0;
        config.amplitude = 10.0;
        config.z_relief = 2.0;
        const int denom = std::max(1, count - 1);
        config.open_duration = speeds.min_duration + span * i / denom;
        config.close_duration =
            speeds.min_duration + span * (count - 1 - i) / denom;
        config.noise_sigma =
            noise_levels.empty() ? 0.0 : noise_levels[i % noise_levels.size()];
        config.seed = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1);

        std::mt19937_64 placement(config.seed ^ 0xA5A5A5A5A5A5A5A5ULL);
        std::uniform_int_distribution<int> open_at(60, 180);
        std::uniform_int_distribution<int> close_at(320, 440);
        config.open_start = open_at(placement);
        config.close_end = close_at(placement);

        SynthOutput out = generate(config);
        char name[16];
        std::snprintf(name, sizeof(name), "seq%03d", i);
        out.name = name;
        suite.push_back(std::move(out));
    }
    return suite;
}

}  // namespace lipevent
