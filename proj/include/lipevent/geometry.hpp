#ifndef LIPEVENT_GEOMETRY_HPP
#define LIPEVENT_GEOMETRY_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "lipevent/errors.hpp"

namespace lipevent {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// One time sample: an ordered set of 3D lip landmarks in millimetres.
// Landmark i corresponds to landmark i in every other frame of a sequence.
struct LandmarkFrame {
    int index = 0;
    std::vector<Vec3> landmarks;

    int landmark_count() const { return static_cast<int>(landmarks.size()); }
};

// Time-ordered landmark frames at a fixed frame rate.
// Valid sequences have >= 2 frames, contiguous indices from 0, a uniform
// landmark count >= 3, and finite coordinates throughout.
struct LandmarkSequence {
    std::vector<LandmarkFrame> frames;
    double frame_rate = 250.0;

    int frame_count() const { return static_cast<int>(frames.size()); }
    int landmark_count() const {
        return frames.empty() ? 0 : frames.front().landmark_count();
    }

    // Throws Error when an invariant is violated.
    void validate() const;
};

// Proper rigid motion: x -> rotation * x + translation.
struct RigidTransform {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
    LandmarkFrame apply(const LandmarkFrame& frame) const;
    RigidTransform inverse() const;
};

// Arithmetic mean of all landmark positions.
Vec3 center_of_mass(const LandmarkFrame& frame);

// Least-squares proper rigid fit of `frame` onto `reference` (no scaling).
// Returns the aligned frame together with the recovered transform.
// Throws DegenerateConfiguration when the rotation is underdetermined
// (collinear or coincident landmarks).
std::pair<LandmarkFrame, RigidTransform> rigid_align(const LandmarkFrame& frame,
                                                     const LandmarkFrame& reference);

// Centered per-coordinate moving average over landmark trajectories.
// The window shrinks near the sequence ends; length, frame rate and
// landmark count are preserved. Window must be odd and >= 1.
LandmarkSequence smooth_sequence(const LandmarkSequence& seq, int window);

// Rigid-aligns every frame to the frame at reference_index. The reference
// frame itself is returned unchanged.
LandmarkSequence pose_correct(const LandmarkSequence& seq, int reference_index);

// Time reversal with frame indices relabeled 0..m-1.
LandmarkSequence reverse_sequence(const LandmarkSequence& seq);

}  // namespace lipevent

#endif  // LIPEVENT_GEOMETRY_HPP
