#ifndef LIPEVENT_TEST_HELPERS_HPP
#define LIPEVENT_TEST_HELPERS_HPP

#include <Eigen/Geometry>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "lipevent/detector.hpp"
#include "lipevent/divergence.hpp"
#include "lipevent/geometry.hpp"

namespace lipevent::test {

inline LandmarkFrame make_frame(std::vector<Vec3> points, int index = 0) {
    LandmarkFrame frame;
    frame.index = index;
    frame.landmarks = std::move(points);
    return frame;
}

// n landmarks on a circle of the given radius in the xy-plane, offset so no
// landmark sits on the x = 0 midline when n is a multiple of 4.
inline LandmarkFrame ring_frame(int n, double radius, const Vec3& center = Vec3::Zero(),
                                int index = 0) {
    std::vector<Vec3> points;
    points.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double theta = (2.0 * i + 1.0) * std::numbers::pi / n;
        points.push_back(center + radius * Vec3(std::cos(theta), std::sin(theta), 0.0));
    }
    return make_frame(std::move(points), index);
}

inline RigidTransform make_transform(double angle_deg, const Vec3& axis,
                                     const Vec3& translation) {
    RigidTransform t;
    t.rotation = Eigen::AngleAxisd(angle_deg * std::numbers::pi / 180.0,
                                   axis.normalized())
                     .toRotationMatrix();
    t.translation = translation;
    return t;
}

inline LandmarkFrame random_frame(std::mt19937_64& rng, int n, double scale = 20.0) {
    std::uniform_real_distribution<double> coord(-scale, scale);
    std::vector<Vec3> points;
    points.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec3 p;
        for (int k = 0; k < 3; ++k) p[k] = coord(rng);
        points.push_back(p);
    }
    return make_frame(std::move(points));
}

// Sequence of a radius-profile-deformed ring: frame t places every landmark
// at distance radius + profile(t) from the origin. Uniform radial motion, so
// the interframe divergence is exactly profile(t) - profile(t-1).
inline LandmarkSequence radial_sequence(int frames, int n, double radius,
                                        const std::function<double(int)>& profile,
                                        double frame_rate = 250.0) {
    LandmarkSequence seq;
    seq.frame_rate = frame_rate;
    seq.frames.reserve(frames);
    for (int t = 0; t < frames; ++t) {
        LandmarkFrame frame = ring_frame(n, radius + profile(t), Vec3::Zero(), t);
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

// Brute-force divergence reference: plain scalar loops, no shared code with
// the library implementation beyond the data layout.
struct BruteForceSignature {
    double total = 0.0;
    double left = 0.0;
    double right = 0.0;
};

inline BruteForceSignature brute_force_divergence(const LandmarkFrame& later,
                                                  const LandmarkFrame& earlier,
                                                  double cx, double cy, double cz) {
    BruteForceSignature out;
    const int n = later.landmark_count();
    double sum = 0.0, left_sum = 0.0, right_sum = 0.0;
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
    out.total = sum / n;
    out.left = left_sum / left_count;
    out.right = right_sum / right_count;
    return out;
}

// Independent finest-resolution scan: walks every consecutive frame pair in
// the window and reports the later frame of the first pair classified as
// opening by the brute-force rules. Shares nothing with the detector.
inline std::optional<int> exhaustive_opening_scan(const LandmarkSequence& seq,
                                                  int lo, int hi,
                                                  double eps_silence,
                                                  double eps_symmetry) {
    double cx = 0.0, cy = 0.0, cz = 0.0;
    for (const Vec3& p : seq.frames[lo].landmarks) {
        cx += p.x();
        cy += p.y();
        cz += p.z();
    }
    const int n = seq.frames[lo].landmark_count();
    cx /= n;
    cy /= n;
    cz /= n;
    for (int t = lo + 1; t <= hi; ++t) {
        const BruteForceSignature sig =
            brute_force_divergence(seq.frames[t], seq.frames[t - 1], cx, cy, cz);
        if (std::abs(sig.total) < eps_silence) continue;
        if (std::abs(sig.left - sig.right) >= eps_symmetry) continue;
        if (sig.total > 0.0) return t;
    }
    return std::nullopt;
}

}  // namespace lipevent::test

#endif  // LIPEVENT_TEST_HELPERS_HPP
