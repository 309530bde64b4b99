#include "lipevent/divergence.hpp"

#include <cmath>
#include <string>

namespace lipevent {

namespace {
constexpr double kMidlineTol = 1e-9;   // mm
constexpr double kCenterTol = 1e-9;    // mm
}  // namespace

ReferenceSphere build_reference_sphere(const LandmarkFrame& reference) {
    return ReferenceSphere{center_of_mass(reference), reference.landmark_count()};
}

LeftRightPartition split_left_right(const LandmarkFrame& landmarks,
                                    const ReferenceSphere& sphere) {
    LeftRightPartition part;
    const int n = landmarks.landmark_count();
    for (int i = 0; i < n; ++i) {
        const double dx = landmarks.landmarks[i].x() - sphere.center.x();
        if (dx < kMidlineTol) part.left.push_back(i);
        if (dx > -kMidlineTol) part.right.push_back(i);
    }
    if (part.left.empty() || part.right.empty())
        throw EmptySide("left/right split produced an empty side (" +
                        std::to_string(part.left.size()) + " left, " +
                        std::to_string(part.right.size()) + " right)");
    return part;
}

std::vector<Vec3> motion_vectors(const LandmarkFrame& current,
                                 const LandmarkFrame& previous) {
    if (current.landmark_count() != previous.landmark_count())
        throw CountMismatch("motion_vectors: " +
                            std::to_string(current.landmark_count()) + " vs " +
                            std::to_string(previous.landmark_count()) +
                            " landmarks");
    std::vector<Vec3> vectors;
    vectors.reserve(current.landmarks.size());
    for (std::size_t i = 0; i < current.landmarks.size(); ++i)
        vectors.push_back(current.landmarks[i] - previous.landmarks[i]);
    return vectors;
}

MotionSignature interframe_divergence(std::span<const Vec3> vectors,
                                      const LandmarkFrame& landmarks,
                                      const ReferenceSphere& sphere,
                                      const LeftRightPartition& partition) {
    const int n = landmarks.landmark_count();
    if (static_cast<int>(vectors.size()) != n || sphere.landmark_count != n)
        throw CountMismatch("interframe_divergence: vector/landmark/sphere "
                            "counts disagree");

    MotionSignature sig;
    sig.per_landmark.resize(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec3 radial = landmarks.landmarks[i] - sphere.center;
        const double dist = radial.norm();
        if (dist < kCenterTol)
            throw LandmarkAtCenter("landmark " + std::to_string(i) +
                                   " coincides with the sphere center");
        sig.per_landmark[i] = vectors[i].dot(radial / dist);
        sum += sig.per_landmark[i];
    }
    // The constant surface patches cancel: the discrete divergence reduces
    // to the mean radial projection, and each half uses its own count.
    sig.div_total = sum / static_cast<double>(n);

    double left_sum = 0.0;
    for (int i : partition.left) left_sum += sig.per_landmark[i];
    sig.div_left = left_sum / static_cast<double>(partition.left.size());

    double right_sum = 0.0;
    for (int i : partition.right) right_sum += sig.per_landmark[i];
    sig.div_right = right_sum / static_cast<double>(partition.right.size());

    sig.source_pair = {landmarks.index - 1, landmarks.index};
    return sig;
}

const char* to_string(MotionState state) {
    switch (state) {
        case MotionState::Static: return "static";
        case MotionState::Opening: return "opening";
        case MotionState::Closing: return "closing";
    }
    return "static";
}

LipState classify_state(const MotionSignature& sig, double eps_silence,
                        double eps_symmetry) {
    if (std::abs(sig.div_total) < eps_silence)
        return {MotionState::Static, Rejection::None};
    if (std::abs(sig.div_left - sig.div_right) >= eps_symmetry)
        return {MotionState::Static, Rejection::Asymmetric};
    return {sig.div_total > 0.0 ? MotionState::Opening : MotionState::Closing,
            Rejection::None};
}

}  // namespace lipevent
