#include "lipevent/geometry.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace lipevent {

void LandmarkSequence::validate() const {
    if (frames.size() < 2)
        throw Error("sequence needs at least 2 frames, got " +
                    std::to_string(frames.size()));
    if (!(frame_rate > 0.0))
        throw Error("frame rate must be positive");
    const int n = frames.front().landmark_count();
    if (n < 3)
        throw Error("sequence needs at least 3 landmarks per frame, got " +
                    std::to_string(n));
    for (std::size_t t = 0; t < frames.size(); ++t) {
        const LandmarkFrame& f = frames[t];
        if (f.index != static_cast<int>(t))
            throw Error("frame indices must be contiguous from 0; frame " +
                        std::to_string(t) + " has index " +
                        std::to_string(f.index));
        if (f.landmark_count() != n)
            throw Error("ragged landmark count at frame " + std::to_string(t) +
                        ": " + std::to_string(f.landmark_count()) + " vs " +
                        std::to_string(n));
        for (const Vec3& p : f.landmarks)
            if (!p.allFinite())
                throw Error("non-finite coordinate at frame " +
                            std::to_string(t));
    }
}

LandmarkFrame RigidTransform::apply(const LandmarkFrame& frame) const {
    LandmarkFrame out;
    out.index = frame.index;
    out.landmarks.reserve(frame.landmarks.size());
    for (const Vec3& p : frame.landmarks) out.landmarks.push_back(apply(p));
    return out;
}

RigidTransform RigidTransform::inverse() const {
    RigidTransform inv;
    inv.rotation = rotation.transpose();
    inv.translation = -(inv.rotation * translation);
    return inv;
}

Vec3 center_of_mass(const LandmarkFrame& frame) {
    Vec3 sum = Vec3::Zero();
    for (const Vec3& p : frame.landmarks) sum += p;
    return sum / static_cast<double>(frame.landmarks.size());
}

std::pair<LandmarkFrame, RigidTransform> rigid_align(const LandmarkFrame& frame,
                                                     const LandmarkFrame& reference) {
    if (frame.landmark_count() != reference.landmark_count())
        throw CountMismatch("rigid_align: " + std::to_string(frame.landmark_count()) +
                            " vs " + std::to_string(reference.landmark_count()) +
                            " landmarks");
    const int n = frame.landmark_count();
    if (n < 3)
        throw DegenerateConfiguration("rigid_align needs at least 3 landmarks");

    const Vec3 com_frame = center_of_mass(frame);
    const Vec3 com_ref = center_of_mass(reference);

    Mat3 cross = Mat3::Zero();
    for (int i = 0; i < n; ++i)
        cross += (frame.landmarks[i] - com_frame) *
                 (reference.landmarks[i] - com_ref).transpose();

    Eigen::JacobiSVD<Mat3> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d sigma = svd.singularValues();
    // Rank < 2 leaves the rotation underdetermined about the point axis /
    // the common line.
    if (sigma(0) <= 0.0 || sigma(1) <= 1e-12 * sigma(0))
        throw DegenerateConfiguration(
            "rigid_align: landmarks are collinear or coincident");

    Mat3 d = Mat3::Identity();
    d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0
                  ? -1.0
                  : 1.0;
    RigidTransform transform;
    transform.rotation = svd.matrixV() * d * svd.matrixU().transpose();
    transform.translation = com_ref - transform.rotation * com_frame;

    return {transform.apply(frame), transform};
}

LandmarkSequence smooth_sequence(const LandmarkSequence& seq, int window) {
    if (window < 1 || window % 2 == 0)
        throw InvalidWindow("smoothing window must be odd and >= 1, got " +
                            std::to_string(window));
    if (window == 1) return seq;

    const int m = seq.frame_count();
    const int n = seq.landmark_count();
    const int half = window / 2;

    LandmarkSequence out;
    out.frame_rate = seq.frame_rate;
    out.frames.resize(m);
    for (int t = 0; t < m; ++t) {
        const int lo = std::max(0, t - half);
        const int hi = std::min(m - 1, t + half);
        LandmarkFrame& f = out.frames[t];
        f.index = t;
        f.landmarks.assign(n, Vec3::Zero());
        for (int s = lo; s <= hi; ++s)
            for (int i = 0; i < n; ++i) f.landmarks[i] += seq.frames[s].landmarks[i];
        const double scale = 1.0 / static_cast<double>(hi - lo + 1);
        for (int i = 0; i < n; ++i) f.landmarks[i] *= scale;
    }
    return out;
}

LandmarkSequence pose_correct(const LandmarkSequence& seq, int reference_index) {
    const int m = seq.frame_count();
    if (reference_index < 0 || reference_index >= m)
        throw Error("pose_correct: reference index " +
                    std::to_string(reference_index) + " outside sequence of " +
                    std::to_string(m) + " frames");
    const LandmarkFrame& reference = seq.frames[reference_index];

    LandmarkSequence out;
    out.frame_rate = seq.frame_rate;
    out.frames.resize(m);
    for (int t = 0; t < m; ++t) {
        if (t == reference_index) {
            out.frames[t] = seq.frames[t];
        } else {
            out.frames[t] = rigid_align(seq.frames[t], reference).first;
            out.frames[t].index = t;
        }
    }
    return out;
}

LandmarkSequence reverse_sequence(const LandmarkSequence& seq) {
    LandmarkSequence out;
    out.frame_rate = seq.frame_rate;
    const int m = seq.frame_count();
    out.frames.resize(m);
    for (int t = 0; t < m; ++t) {
        out.frames[t] = seq.frames[m - 1 - t];
        out.frames[t].index = t;
    }
    return out;
}

}  // namespace lipevent
