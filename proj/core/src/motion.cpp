#include "motionattack/motion.hpp"

#include <cmath>

#include "motionattack/errors.hpp"

namespace motionattack {

void Skeleton::validate() const {
    const std::size_t j = joints();
    if (j < 2) throw ValueError("skeleton: needs at least 2 joints");
    if (vertical_axis < 0 || vertical_axis > 2) {
        throw ValueError("skeleton: vertical axis index must be 0, 1 or 2");
    }
    if (edges.size() != j - 1) {
        throw ValueError("skeleton: a tree over " + std::to_string(j) + " joints needs " +
                         std::to_string(j - 1) + " edges, got " + std::to_string(edges.size()));
    }
    // Union-find connectivity check.
    std::vector<int> parent(j);
    for (std::size_t i = 0; i < j; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (auto [p, c] : edges) {
        if (p < 0 || c < 0 || p >= static_cast<int>(j) || c >= static_cast<int>(j)) {
            throw ValueError("skeleton: edge (" + std::to_string(p) + ", " + std::to_string(c) +
                             ") references a joint outside 0.." + std::to_string(j - 1));
        }
        int rp = find(p), rc = find(c);
        if (rp == rc) throw ValueError("skeleton: edges contain a cycle");
        parent[rp] = rc;
    }
}

PoseSequence::PoseSequence(Tensor f, double fps_) : frames(std::move(f)), fps(fps_) {
    if (frames.rank() != 3 || frames.dim(2) != 3) {
        throw ShapeError("pose sequence: expected T x J x 3 frames, got " +
                         shape_str(frames.shape()));
    }
    if (!(fps > 0.0)) throw ValueError("pose sequence: fps must be positive");
}

PoseSequence downsample(const PoseSequence& seq, double target_fps) {
    if (!(target_fps > 0.0)) throw ValueError("downsample: target fps must be positive");
    const double ratio = seq.fps / target_fps;
    const auto k = static_cast<std::size_t>(std::llround(ratio));
    if (k < 1 || std::abs(ratio - static_cast<double>(k)) > 1e-9) {
        throw ValueError("downsample: fps " + std::to_string(seq.fps) +
                         " is not an integer multiple of target " + std::to_string(target_fps));
    }
    if (k == 1) return seq;
    const std::size_t T = seq.length(), J = seq.joints();
    const std::size_t kept = (T + k - 1) / k;
    Tensor out({kept, J, 3}, 0.0);
    for (std::size_t t = 0; t < kept; ++t) {
        const double* src = seq.frames.data() + (t * k) * J * 3;
        double* dst = out.data() + t * J * 3;
        for (std::size_t i = 0; i < J * 3; ++i) dst[i] = src[i];
    }
    return PoseSequence(std::move(out), target_fps);
}

Tensor to_displacements(const PoseSequence& seq) {
    const std::size_t T = seq.length(), J = seq.joints();
    if (T < 2) throw ValueError("to_displacements: needs at least 2 frames");
    Tensor out({T - 1, J, 3}, 0.0);
    const double* f = seq.frames.data();
    for (std::size_t i = 0; i < (T - 1) * J * 3; ++i) out[i] = f[i + J * 3] - f[i];
    return out;
}

PoseSequence from_displacements(const Tensor& anchor, const Tensor& disp, double fps) {
    if (anchor.rank() != 2 || anchor.dim(1) != 3) {
        throw ShapeError("from_displacements: anchor must be J x 3, got " +
                         shape_str(anchor.shape()));
    }
    if (disp.rank() != 3 || disp.dim(2) != 3 || disp.dim(1) != anchor.dim(0)) {
        throw ShapeError("from_displacements: displacements " + shape_str(disp.shape()) +
                         " do not match anchor " + shape_str(anchor.shape()));
    }
    const std::size_t J = anchor.dim(0);
    const std::size_t T = disp.dim(0) + 1;
    Tensor out({T, J, 3}, 0.0);
    for (std::size_t i = 0; i < J * 3; ++i) out[i] = anchor[i];
    for (std::size_t t = 1; t < T; ++t) {
        const double* prev = out.data() + (t - 1) * J * 3;
        const double* d = disp.data() + (t - 1) * J * 3;
        double* cur = out.data() + t * J * 3;
        for (std::size_t i = 0; i < J * 3; ++i) cur[i] = prev[i] + d[i];
    }
    return PoseSequence(std::move(out), fps);
}

Tensor dct_basis(std::size_t K, std::size_t T) {
    if (K < 1 || K > T) {
        throw ValueError("dct_basis: K must satisfy 1 <= K <= T, got K=" + std::to_string(K) +
                         " T=" + std::to_string(T));
    }
    const double pi = 3.14159265358979323846;
    Tensor B({K, T}, 0.0);
    const double c0 = std::sqrt(1.0 / static_cast<double>(T));
    const double ck = std::sqrt(2.0 / static_cast<double>(T));
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t t = 0; t < T; ++t) {
            B.at(k, t) = (k == 0)
                             ? c0
                             : ck * std::cos(pi * (2.0 * t + 1.0) * k / (2.0 * static_cast<double>(T)));
        }
    }
    return B;
}

Tensor dct_encode(const PoseSequence& seq, std::size_t K) {
    const std::size_t T = seq.length(), J = seq.joints();
    const Tensor B = dct_basis(K, T);
    // coeffs = B * frames viewed as (T, J*3)
    Tensor flat = seq.frames.reshaped({T, J * 3});
    return matmul(B, flat).reshaped({K, J, 3});
}

PoseSequence idct_decode(const Tensor& coeffs, std::size_t T, double fps) {
    if (coeffs.rank() != 3 || coeffs.dim(2) != 3) {
        throw ShapeError("idct_decode: expected K x J x 3 coefficients, got " +
                         shape_str(coeffs.shape()));
    }
    const std::size_t K = coeffs.dim(0), J = coeffs.dim(1);
    const Tensor B = dct_basis(K, T);
    // frames = B^T * coeffs viewed as (K, J*3)
    Tensor Bt({T, K}, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t t = 0; t < T; ++t) Bt.at(t, k) = B.at(k, t);
    }
    Tensor flat = matmul(Bt, coeffs.reshaped({K, J * 3}));
    return PoseSequence(flat.reshaped({T, J, 3}), fps);
}

std::vector<MotionSample> window_split(const PoseSequence& seq, std::size_t t_in,
                                       std::size_t t_out, std::size_t stride,
                                       const std::string& action_label) {
    if (t_in < 1 || t_out < 1) throw ValueError("window_split: window lengths must be positive");
    if (stride < 1) throw ValueError("window_split: stride must be positive");
    std::vector<MotionSample> samples;
    const std::size_t T = seq.length(), J = seq.joints();
    const std::size_t window = t_in + t_out;
    if (T < window) return samples;
    auto copy_frames = [&](std::size_t from, std::size_t count) {
        Tensor out({count, J, 3}, 0.0);
        const double* src = seq.frames.data() + from * J * 3;
        for (std::size_t i = 0; i < count * J * 3; ++i) out[i] = src[i];
        return out;
    };
    for (std::size_t start = 0; start + window <= T; start += stride) {
        MotionSample s;
        s.input = PoseSequence(copy_frames(start, t_in), seq.fps);
        s.target = PoseSequence(copy_frames(start + t_in, t_out), seq.fps);
        s.action_label = action_label;
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace motionattack
