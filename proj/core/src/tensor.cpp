#include "motionattack/tensor.hpp"

#include <cmath>
#include <sstream>

#include "motionattack/errors.hpp"

namespace motionattack {

std::size_t shape_numel(const Shape& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) n *= d;
    return n;
}

std::string shape_str(const Shape& shape) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) os << ", ";
        os << shape[i];
    }
    os << ")";
    return os.str();
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(std::move(shape)), data_(shape_numel(shape_), fill) {
    for (std::size_t d : shape_) {
        if (d == 0) throw ShapeError("tensor dimensions must be positive, got " + shape_str(shape_));
    }
}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    for (std::size_t d : shape_) {
        if (d == 0) throw ShapeError("tensor dimensions must be positive, got " + shape_str(shape_));
    }
    if (shape_numel(shape_) != data_.size()) {
        throw ShapeError("shape " + shape_str(shape_) + " expects " +
                         std::to_string(shape_numel(shape_)) + " values, got " +
                         std::to_string(data_.size()));
    }
}

Tensor Tensor::eye(std::size_t n) {
    Tensor m({n, n}, 0.0);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

double& Tensor::at(std::size_t r, std::size_t c) {
    return data_[r * shape_[1] + c];
}

double Tensor::at(std::size_t r, std::size_t c) const {
    return data_[r * shape_[1] + c];
}

double& Tensor::at(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
}

double Tensor::at(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
}

bool Tensor::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void Tensor::validate_finite(const std::string& what) const {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            throw ValueError(what + ": non-finite value at flat index " + std::to_string(i));
        }
    }
}

Tensor Tensor::reshaped(Shape new_shape) const {
    if (shape_numel(new_shape) != data_.size()) {
        throw ShapeError("cannot reshape " + shape_str(shape_) + " to " + shape_str(new_shape));
    }
    return Tensor(std::move(new_shape), data_);
}

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a.shape()) +
                         " vs " + shape_str(b.shape()));
    }
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    Tensor out = a;
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] += b[i];
    return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "sub");
    Tensor out = a;
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] -= b[i];
    return out;
}

Tensor mul(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "mul");
    Tensor out = a;
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] *= b[i];
    return out;
}

Tensor scale(const Tensor& a, double s) {
    Tensor out = a;
    for (std::size_t i = 0; i < out.numel(); ++i) out[i] *= s;
    return out;
}

Tensor sign(const Tensor& a) {
    Tensor out = a;
    for (std::size_t i = 0; i < out.numel(); ++i) {
        out[i] = (a[i] > 0.0) ? 1.0 : (a[i] < 0.0 ? -1.0 : 0.0);
    }
    return out;
}

Tensor clamp(const Tensor& x, const Tensor& lo, const Tensor& hi) {
    require_same_shape(x, lo, "clamp");
    require_same_shape(x, hi, "clamp");
    Tensor out = x;
    for (std::size_t i = 0; i < out.numel(); ++i) {
        if (out[i] < lo[i]) out[i] = lo[i];
        if (out[i] > hi[i]) out[i] = hi[i];
    }
    return out;
}

double norm_l1(const Tensor& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) s += std::abs(a[i]);
    return s;
}

double norm_l2(const Tensor& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) s += a[i] * a[i];
    return std::sqrt(s);
}

double norm_linf(const Tensor& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2) {
        throw ShapeError("matmul: expects 2-D operands, got " + shape_str(a.shape()) + " and " +
                         shape_str(b.shape()));
    }
    const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
    if (b.dim(0) != k) {
        throw ShapeError("matmul: inner dimensions differ, " + shape_str(a.shape()) + " * " +
                         shape_str(b.shape()));
    }
    Tensor out({m, n}, 0.0);
    const double* pa = a.data();
    const double* pb = b.data();
    double* po = out.data();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const double av = pa[i * k + l];
            if (av == 0.0) continue;
            const double* brow = pb + l * n;
            double* orow = po + i * n;
            for (std::size_t j = 0; j < n; ++j) orow[j] += av * brow[j];
        }
    }
    return out;
}

}  // namespace motionattack
