#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "motionattack/motion.hpp"

namespace motionattack {

/// Desk-scale skeleton presets. 8 and 22 joints come with named joints and
/// human-like rest proportions; other sizes fall back to a generic tree.
Skeleton desk_skeleton(std::size_t joints, int vertical_axis = 1);

/// Rest pose (J x 3) for a skeleton built by desk_skeleton.
Tensor rest_pose(const Skeleton& skeleton);

struct SynthConfig {
    std::size_t samples = 100;
    std::size_t joints = 8;
    std::size_t t_in = 10;
    std::size_t t_out = 25;
    double fps = 25.0;
    int vertical_axis = 1;
    /// (action label, weight). Supported labels: walking, waving, static.
    std::vector<std::pair<std::string, double>> action_mix = {
        {"walking", 0.5}, {"waving", 0.3}, {"static", 0.2}};

    void validate() const;
};

struct SynthSequence {
    PoseSequence seq;  // t_in + t_out frames
    std::string action;
};

/// Quasi-periodic skeletal motion: per-joint bone rotations driven by sums of
/// 2-4 sinusoids around the rest pose, a global drift for walking-like
/// actions, and a small smooth root wobble. Bone lengths are constant per
/// sample by construction. Deterministic per seed.
std::vector<SynthSequence> synth_sequences(const SynthConfig& config, std::uint64_t seed);

/// synth_sequences windowed into one MotionSample per sequence.
std::vector<MotionSample> synth_generate(const SynthConfig& config, std::uint64_t seed);

}  // namespace motionattack
