#pragma once

#include <string>
#include <utility>
#include <vector>

#include "motionattack/tensor.hpp"

namespace motionattack {

/// Joint tree with a designated vertical axis (0=x, 1=y, 2=z).
struct Skeleton {
    std::vector<std::string> joint_names;
    std::vector<std::pair<int, int>> edges;  // (parent, child) joint indices
    int vertical_axis = 1;

    std::size_t joints() const { return joint_names.size(); }
    /// Throws unless edges form a connected tree over all joints and the
    /// vertical axis index is valid.
    void validate() const;
};

/// T x J x 3 joint positions in meters.
struct PoseSequence {
    Tensor frames;  // shape (T, J, 3)
    double fps = 25.0;

    PoseSequence() = default;
    PoseSequence(Tensor f, double fps_);

    std::size_t length() const { return frames.dim(0); }
    std::size_t joints() const { return frames.dim(1); }
};

/// One forecasting example: T_in observed frames and the T_out frames that
/// immediately follow, at the same frame rate.
struct MotionSample {
    PoseSequence input;
    PoseSequence target;
    std::string action_label;
};

/// Keeps every k-th frame, k = seq.fps / target_fps (must be integral).
PoseSequence downsample(const PoseSequence& seq, double target_fps);

/// output[t] = frames[t+1] - frames[t]; requires T >= 2.
Tensor to_displacements(const PoseSequence& seq);

/// Cumulative sum of displacements anchored at `anchor` (J x 3).
PoseSequence from_displacements(const Tensor& anchor, const Tensor& disp, double fps);

/// Orthonormal DCT-II basis, rows k = 0..K-1 over T time steps.
/// basis[0][t] = sqrt(1/T); basis[k][t] = sqrt(2/T) cos(pi (2t+1) k / (2T)).
Tensor dct_basis(std::size_t K, std::size_t T);

/// Projects each joint-coordinate channel onto the first K basis vectors.
/// Returns K x J x 3 coefficients.
Tensor dct_encode(const PoseSequence& seq, std::size_t K);

/// Reconstructs T frames from K x J x 3 coefficients (high frequencies zero).
PoseSequence idct_decode(const Tensor& coeffs, std::size_t T, double fps);

/// Contiguous (input, target) windows at the given stride. A sequence shorter
/// than T_in + T_out yields an empty list.
std::vector<MotionSample> window_split(const PoseSequence& seq, std::size_t t_in,
                                       std::size_t t_out, std::size_t stride,
                                       const std::string& action_label = "");

}  // namespace motionattack
