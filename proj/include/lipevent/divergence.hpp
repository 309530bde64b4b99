#ifndef LIPEVENT_DIVERGENCE_HPP
#define LIPEVENT_DIVERGENCE_HPP

#include <span>
#include <utility>
#include <vector>

#include "lipevent/geometry.hpp"

namespace lipevent {

// Reference for the divergence measure: a conceptual sphere centered at the
// lip's center of mass in the reference frame. Only the center and the
// landmark count matter; the per-landmark surface patches are constant and
// cancel out of the discrete divergence, so no radius is stored.
struct ReferenceSphere {
    Vec3 center = Vec3::Zero();
    int landmark_count = 0;
};

ReferenceSphere build_reference_sphere(const LandmarkFrame& reference);

// Index sets for the two lip halves, split by the sign of the x-offset from
// the sphere center. Landmarks within 1e-9 mm of the midline belong to both.
struct LeftRightPartition {
    std::vector<int> left;
    std::vector<int> right;
};

// Throws EmptySide when either half would be empty.
LeftRightPartition split_left_right(const LandmarkFrame& landmarks,
                                    const ReferenceSphere& sphere);

// Per-interframe motion divergence values in millimetres. Positive totals
// indicate outward (opening) motion, negative inward (closing) motion.
struct MotionSignature {
    double div_total = 0.0;
    double div_left = 0.0;
    double div_right = 0.0;
    std::vector<double> per_landmark;
    std::pair<int, int> source_pair{0, 0};  // (earlier, later) frame index
};

// Element-wise landmark displacement current - previous.
// Throws CountMismatch on differing landmark counts.
std::vector<Vec3> motion_vectors(const LandmarkFrame& current,
                                 const LandmarkFrame& previous);

// Discrete divergence of an interframe motion field over the reference
// sphere: each motion vector is projected onto the unit radial direction of
// its landmark (taken from the later frame of the pair), and the projections
// are averaged. Left/right values average the same projections over each
// partition side. Throws LandmarkAtCenter when a radial direction is
// undefined.
MotionSignature interframe_divergence(std::span<const Vec3> vectors,
                                      const LandmarkFrame& landmarks,
                                      const ReferenceSphere& sphere,
                                      const LeftRightPartition& partition);

enum class MotionState { Static, Opening, Closing };

enum class Rejection { None, Asymmetric };

// Classification of one interframe motion. Opening/Closing never carry a
// rejection; asymmetric motion is reported as Static with the flag set.
struct LipState {
    MotionState state = MotionState::Static;
    Rejection rejection = Rejection::None;

    bool operator==(const LipState&) const = default;
};

const char* to_string(MotionState state);

// Silence test first (|div_total| < eps_silence -> Static), then the
// symmetry constraint (|div_left - div_right| >= eps_symmetry rejects the
// motion), then the sign of the total decides Opening vs Closing.
LipState classify_state(const MotionSignature& sig, double eps_silence,
                        double eps_symmetry);

}  // namespace lipevent

#endif  // LIPEVENT_DIVERGENCE_HPP
