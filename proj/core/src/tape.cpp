#include "motionattack/tape.hpp"

#include <cmath>

#include "motionattack/errors.hpp"

namespace motionattack {

namespace {

// Row-major region arithmetic for slice/concat along one axis:
// outer * span * inner where span is the extent of `axis`.
struct AxisSplit {
    std::size_t outer = 1;
    std::size_t span = 1;
    std::size_t inner = 1;
};

AxisSplit split_at(const Shape& shape, std::size_t axis) {
    AxisSplit s;
    for (std::size_t i = 0; i < axis; ++i) s.outer *= shape[i];
    s.span = shape[axis];
    for (std::size_t i = axis + 1; i < shape.size(); ++i) s.inner *= shape[i];
    return s;
}

}  // namespace

const char* Tape::op_name(Op op) {
    switch (op) {
        case Op::Input: return "input";
        case Op::Constant: return "constant";
        case Op::MatMul: return "matmul";
        case Op::Add: return "add";
        case Op::Mul: return "mul";
        case Op::Tanh: return "tanh";
        case Op::Sqrt: return "sqrt";
        case Op::Square: return "square";
        case Op::Mean: return "mean";
        case Op::Slice: return "slice";
        case Op::Reshape: return "reshape";
        case Op::Concat: return "concat";
    }
    return "?";
}

Tape::Id Tape::push(Node node) {
    nodes_.push_back(std::move(node));
    return static_cast<Id>(nodes_.size() - 1);
}

const Tape::Node& Tape::node(Id v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= nodes_.size()) {
        throw ValueError("tape: invalid node id " + std::to_string(v));
    }
    return nodes_[static_cast<std::size_t>(v)];
}

const Shape& Tape::shape_of(Id v) const { return node(v).shape; }

Tape::Id Tape::input(const std::string& name, Shape shape, bool wants_grad) {
    if (input_ids_.count(name)) throw ValueError("tape: duplicate input name '" + name + "'");
    Node n;
    n.op = Op::Input;
    n.shape = std::move(shape);
    n.name = name;
    n.wants_grad = wants_grad;
    Id id = push(std::move(n));
    input_ids_[name] = id;
    forward_done_ = false;
    return id;
}

Tape::Id Tape::constant(Tensor value) {
    Node n;
    n.op = Op::Constant;
    n.shape = value.shape();
    n.value = std::move(value);
    return push(std::move(n));
}

Tape::Id Tape::matmul(Id a, Id b) {
    const Shape& sa = shape_of(a);
    const Shape& sb = shape_of(b);
    if (sa.size() != 2 || sb.size() != 2 || sa[1] != sb[0]) {
        throw ShapeError("tape matmul: incompatible operands " + shape_str(sa) + " * " + shape_str(sb));
    }
    Node n;
    n.op = Op::MatMul;
    n.args = {a, b};
    n.shape = {sa[0], sb[1]};
    return push(std::move(n));
}

Tape::Id Tape::add(Id a, Id b) {
    if (shape_of(a) != shape_of(b)) {
        throw ShapeError("tape add: shape mismatch " + shape_str(shape_of(a)) + " vs " +
                         shape_str(shape_of(b)));
    }
    Node n;
    n.op = Op::Add;
    n.args = {a, b};
    n.shape = shape_of(a);
    return push(std::move(n));
}

Tape::Id Tape::mul(Id a, Id b) {
    if (shape_of(a) != shape_of(b)) {
        throw ShapeError("tape mul: shape mismatch " + shape_str(shape_of(a)) + " vs " +
                         shape_str(shape_of(b)));
    }
    Node n;
    n.op = Op::Mul;
    n.args = {a, b};
    n.shape = shape_of(a);
    return push(std::move(n));
}

Tape::Id Tape::tanh(Id a) {
    Node n;
    n.op = Op::Tanh;
    n.args = {a};
    n.shape = shape_of(a);
    return push(std::move(n));
}

Tape::Id Tape::sqrt(Id a) {
    Node n;
    n.op = Op::Sqrt;
    n.args = {a};
    n.shape = shape_of(a);
    return push(std::move(n));
}

Tape::Id Tape::square(Id a) {
    Node n;
    n.op = Op::Square;
    n.args = {a};
    n.shape = shape_of(a);
    return push(std::move(n));
}

Tape::Id Tape::mean(Id a) {
    Node n;
    n.op = Op::Mean;
    n.args = {a};
    n.shape = {1};
    return push(std::move(n));
}

Tape::Id Tape::slice(Id a, std::size_t axis, std::size_t start, std::size_t stop) {
    const Shape& s = shape_of(a);
    if (axis >= s.size()) {
        throw ShapeError("tape slice: axis " + std::to_string(axis) + " out of range for " +
                         shape_str(s));
    }
    if (start >= stop || stop > s[axis]) {
        throw ShapeError("tape slice: range [" + std::to_string(start) + ", " +
                         std::to_string(stop) + ") invalid for axis extent " +
                         std::to_string(s[axis]));
    }
    Node n;
    n.op = Op::Slice;
    n.args = {a};
    n.axis = axis;
    n.start = start;
    n.stop = stop;
    n.shape = s;
    n.shape[axis] = stop - start;
    return push(std::move(n));
}

Tape::Id Tape::reshape(Id a, Shape shape) {
    if (shape_numel(shape) != shape_numel(shape_of(a))) {
        throw ShapeError("tape reshape: " + shape_str(shape_of(a)) + " to " + shape_str(shape) +
                         " changes element count");
    }
    Node n;
    n.op = Op::Reshape;
    n.args = {a};
    n.shape = std::move(shape);
    return push(std::move(n));
}

Tape::Id Tape::concat(const std::vector<Id>& parts, std::size_t axis) {
    if (parts.empty()) throw ValueError("tape concat: no operands");
    Shape out = shape_of(parts[0]);
    if (axis >= out.size()) {
        throw ShapeError("tape concat: axis " + std::to_string(axis) + " out of range for " +
                         shape_str(out));
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
        Shape s = shape_of(parts[i]);
        if (s.size() != out.size()) {
            throw ShapeError("tape concat: rank mismatch " + shape_str(out) + " vs " + shape_str(s));
        }
        for (std::size_t d = 0; d < s.size(); ++d) {
            if (d != axis && s[d] != out[d]) {
                throw ShapeError("tape concat: non-axis dims differ, " + shape_str(out) + " vs " +
                                 shape_str(s));
            }
        }
        out[axis] += s[axis];
    }
    Node n;
    n.op = Op::Concat;
    n.args = parts;
    n.axis = axis;
    n.shape = std::move(out);
    return push(std::move(n));
}

Tape::Id Tape::sub(Id a, Id b) {
    return add(a, mul(b, constant(Tensor::full(shape_of(b), -1.0))));
}

Tape::Id Tape::scale_by(Id a, double s) {
    return mul(a, constant(Tensor::full(shape_of(a), s)));
}

Tape::Id Tape::bias_rows(Id row, std::size_t rows) {
    const Shape& s = shape_of(row);
    if (s.size() != 2 || s[0] != 1) {
        throw ShapeError("tape bias_rows: expected 1 x C row vector, got " + shape_str(s));
    }
    return matmul(constant(Tensor::full({rows, 1}, 1.0)), row);
}

void Tape::mark_output(const std::string& name, Id v) {
    node(v);  // validates
    output_ids_[name] = v;
}

void Tape::eval(Node& n) {
    switch (n.op) {
        case Op::Input:
        case Op::Constant:
            return;
        case Op::MatMul:
            n.value = motionattack::matmul(nodes_[n.args[0]].value, nodes_[n.args[1]].value);
            return;
        case Op::Add:
            n.value = motionattack::add(nodes_[n.args[0]].value, nodes_[n.args[1]].value);
            return;
        case Op::Mul:
            n.value = motionattack::mul(nodes_[n.args[0]].value, nodes_[n.args[1]].value);
            return;
        case Op::Tanh: {
            n.value = nodes_[n.args[0]].value;
            for (std::size_t i = 0; i < n.value.numel(); ++i) n.value[i] = std::tanh(n.value[i]);
            return;
        }
        case Op::Sqrt: {
            n.value = nodes_[n.args[0]].value;
            for (std::size_t i = 0; i < n.value.numel(); ++i) n.value[i] = std::sqrt(n.value[i]);
            return;
        }
        case Op::Square: {
            n.value = nodes_[n.args[0]].value;
            for (std::size_t i = 0; i < n.value.numel(); ++i) n.value[i] *= n.value[i];
            return;
        }
        case Op::Mean: {
            const Tensor& a = nodes_[n.args[0]].value;
            double s = 0.0;
            for (std::size_t i = 0; i < a.numel(); ++i) s += a[i];
            n.value = Tensor::scalar(s / static_cast<double>(a.numel()));
            return;
        }
        case Op::Slice: {
            const Tensor& a = nodes_[n.args[0]].value;
            AxisSplit sp = split_at(a.shape(), n.axis);
            n.value = Tensor(n.shape, 0.0);
            const std::size_t width = (n.stop - n.start) * sp.inner;
            for (std::size_t o = 0; o < sp.outer; ++o) {
                const double* src = a.data() + (o * sp.span + n.start) * sp.inner;
                double* dst = n.value.data() + o * width;
                for (std::size_t i = 0; i < width; ++i) dst[i] = src[i];
            }
            return;
        }
        case Op::Reshape:
            n.value = nodes_[n.args[0]].value.reshaped(n.shape);
            return;
        case Op::Concat: {
            n.value = Tensor(n.shape, 0.0);
            AxisSplit sp = split_at(n.shape, n.axis);
            std::size_t offset = 0;  // along the concat axis
            for (Id arg : n.args) {
                const Tensor& a = nodes_[arg].value;
                const std::size_t aspan = a.shape()[n.axis];
                const std::size_t width = aspan * sp.inner;
                for (std::size_t o = 0; o < sp.outer; ++o) {
                    const double* src = a.data() + o * width;
                    double* dst = n.value.data() + (o * sp.span + offset) * sp.inner;
                    for (std::size_t i = 0; i < width; ++i) dst[i] = src[i];
                }
                offset += aspan;
            }
            return;
        }
    }
}

std::map<std::string, Tensor> Tape::forward(const std::map<std::string, Tensor>& inputs) {
    for (auto& [name, id] : input_ids_) {
        auto it = inputs.find(name);
        if (it == inputs.end()) throw ValueError("tape forward: missing input '" + name + "'");
        const Tensor& v = it->second;
        Node& n = nodes_[static_cast<std::size_t>(id)];
        if (v.shape() != n.shape) {
            throw ShapeError("tape forward: input '" + name + "' expects " + shape_str(n.shape) +
                             ", got " + shape_str(v.shape()));
        }
        n.value = v;
    }
    for (Node& n : nodes_) eval(n);
    forward_done_ = true;

    std::map<std::string, Tensor> out;
    for (auto& [name, id] : output_ids_) out.emplace(name, nodes_[static_cast<std::size_t>(id)].value);
    return out;
}

const Tensor& Tape::output(const std::string& name) const {
    auto it = output_ids_.find(name);
    if (it == output_ids_.end()) throw ValueError("tape: unknown output '" + name + "'");
    if (!forward_done_) throw ValueError("tape: forward has not been run");
    return nodes_[static_cast<std::size_t>(it->second)].value;
}

void Tape::accumulate(Node& n) {
    const Tensor& g = n.adjoint;
    switch (n.op) {
        case Op::Input:
        case Op::Constant:
            return;
        case Op::MatMul: {
            Node& a = nodes_[n.args[0]];
            Node& b = nodes_[n.args[1]];
            // da += g * b^T ; db += a^T * g
            const std::size_t m = a.shape[0], k = a.shape[1], c = b.shape[1];
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t l = 0; l < k; ++l) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < c; ++j) s += g[i * c + j] * b.value[l * c + j];
                    a.adjoint[i * k + l] += s;
                }
            }
            for (std::size_t l = 0; l < k; ++l) {
                for (std::size_t j = 0; j < c; ++j) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < m; ++i) s += a.value[i * k + l] * g[i * c + j];
                    b.adjoint[l * c + j] += s;
                }
            }
            return;
        }
        case Op::Add: {
            Node& a = nodes_[n.args[0]];
            Node& b = nodes_[n.args[1]];
            for (std::size_t i = 0; i < g.numel(); ++i) {
                a.adjoint[i] += g[i];
                b.adjoint[i] += g[i];
            }
            return;
        }
        case Op::Mul: {
            Node& a = nodes_[n.args[0]];
            Node& b = nodes_[n.args[1]];
            for (std::size_t i = 0; i < g.numel(); ++i) {
                a.adjoint[i] += g[i] * b.value[i];
                b.adjoint[i] += g[i] * a.value[i];
            }
            return;
        }
        case Op::Tanh: {
            Node& a = nodes_[n.args[0]];
            for (std::size_t i = 0; i < g.numel(); ++i) {
                a.adjoint[i] += g[i] * (1.0 - n.value[i] * n.value[i]);
            }
            return;
        }
        case Op::Sqrt: {
            // Subgradient 0 at the nondifferentiable origin.
            Node& a = nodes_[n.args[0]];
            for (std::size_t i = 0; i < g.numel(); ++i) {
                if (n.value[i] > 0.0) a.adjoint[i] += g[i] / (2.0 * n.value[i]);
            }
            return;
        }
        case Op::Square: {
            Node& a = nodes_[n.args[0]];
            for (std::size_t i = 0; i < g.numel(); ++i) {
                a.adjoint[i] += g[i] * 2.0 * a.value[i];
            }
            return;
        }
        case Op::Mean: {
            Node& a = nodes_[n.args[0]];
            const double gv = g[0] / static_cast<double>(a.value.numel());
            for (std::size_t i = 0; i < a.adjoint.numel(); ++i) a.adjoint[i] += gv;
            return;
        }
        case Op::Slice: {
            Node& a = nodes_[n.args[0]];
            AxisSplit sp = split_at(a.shape, n.axis);
            const std::size_t width = (n.stop - n.start) * sp.inner;
            for (std::size_t o = 0; o < sp.outer; ++o) {
                const double* src = g.data() + o * width;
                double* dst = a.adjoint.data() + (o * sp.span + n.start) * sp.inner;
                for (std::size_t i = 0; i < width; ++i) dst[i] += src[i];
            }
            return;
        }
        case Op::Reshape: {
            Node& a = nodes_[n.args[0]];
            for (std::size_t i = 0; i < g.numel(); ++i) a.adjoint[i] += g[i];
            return;
        }
        case Op::Concat: {
            AxisSplit sp = split_at(n.shape, n.axis);
            std::size_t offset = 0;
            for (Id arg : n.args) {
                Node& a = nodes_[arg];
                const std::size_t aspan = a.shape[n.axis];
                const std::size_t width = aspan * sp.inner;
                for (std::size_t o = 0; o < sp.outer; ++o) {
                    const double* src = g.data() + (o * sp.span + offset) * sp.inner;
                    double* dst = a.adjoint.data() + o * width;
                    for (std::size_t i = 0; i < width; ++i) dst[i] += src[i];
                }
                offset += aspan;
            }
            return;
        }
    }
}

std::map<std::string, Tensor> Tape::backward(const std::string& scalar_output) {
    auto it = output_ids_.find(scalar_output);
    if (it == output_ids_.end()) {
        throw ValueError("tape backward: unknown output '" + scalar_output + "'");
    }
    if (!forward_done_) throw ValueError("tape backward: forward has not been run");
    const Id root = it->second;
    if (shape_numel(nodes_[static_cast<std::size_t>(root)].shape) != 1) {
        throw ShapeError("tape backward: output '" + scalar_output + "' is not scalar, shape " +
                         shape_str(nodes_[static_cast<std::size_t>(root)].shape));
    }

    for (Node& n : nodes_) n.adjoint = Tensor(n.shape, 0.0);
    nodes_[static_cast<std::size_t>(root)].adjoint[0] = 1.0;

    for (std::size_t i = nodes_.size(); i-- > 0;) {
        accumulate(nodes_[i]);
    }

    std::map<std::string, Tensor> grads;
    for (auto& [name, id] : input_ids_) {
        const Node& n = nodes_[static_cast<std::size_t>(id)];
        if (n.wants_grad) grads.emplace(name, n.adjoint);
    }
    return grads;
}

Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f, const Tensor& x, double h) {
    if (!(h > 0.0)) throw ValueError("finite_diff_grad: step size must be positive");
    Tensor grad(x.shape(), 0.0);
    Tensor probe = x;
    for (std::size_t i = 0; i < x.numel(); ++i) {
        const double orig = probe[i];
        probe[i] = orig + h;
        const double fp = f(probe);
        probe[i] = orig - h;
        const double fm = f(probe);
        probe[i] = orig;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw NumericError("finite_diff_grad: non-finite evaluation at coordinate " +
                               std::to_string(i));
        }
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

}  // namespace motionattack
