#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace motionattack {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape);
std::string shape_str(const Shape& shape);

/// Dense row-major array of doubles. Values produced internally may be any
/// finite double; data read from external files goes through
/// `validate_finite` so NaN/Inf never enter through the IO boundary.
class Tensor {
public:
    Tensor() = default;
    Tensor(Shape shape, double fill = 0.0);
    Tensor(Shape shape, std::vector<double> data);

    static Tensor scalar(double v) { return Tensor({1}, {v}); }
    static Tensor zeros(Shape shape) { return Tensor(std::move(shape), 0.0); }
    static Tensor full(Shape shape, double v) { return Tensor(std::move(shape), v); }
    /// Identity matrix n x n.
    static Tensor eye(std::size_t n);

    const Shape& shape() const { return shape_; }
    std::size_t rank() const { return shape_.size(); }
    std::size_t numel() const { return data_.size(); }
    std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& vec() { return data_; }
    const std::vector<double>& vec() const { return data_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    /// 2-D element access (matrices).
    double& at(std::size_t r, std::size_t c);
    double at(std::size_t r, std::size_t c) const;
    /// 3-D element access (pose frames: t, j, d).
    double& at(std::size_t i, std::size_t j, std::size_t k);
    double at(std::size_t i, std::size_t j, std::size_t k) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool all_finite() const;
    /// Throws ValueError naming `what` if any element is NaN/Inf.
    void validate_finite(const std::string& what) const;

    Tensor reshaped(Shape new_shape) const;

private:
    Shape shape_;
    std::vector<double> data_;
};

// Elementwise helpers used outside the tape (attack updates, metrics).
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
/// sign(0) = 0.
Tensor sign(const Tensor& a);
/// Elementwise clamp of `x` into [lo, hi] (all same shape).
Tensor clamp(const Tensor& x, const Tensor& lo, const Tensor& hi);

double norm_l1(const Tensor& a);
double norm_l2(const Tensor& a);
double norm_linf(const Tensor& a);
double max_abs_diff(const Tensor& a, const Tensor& b);

/// Plain 2-D matrix product (m x k) * (k x n).
Tensor matmul(const Tensor& a, const Tensor& b);

}  // namespace motionattack
