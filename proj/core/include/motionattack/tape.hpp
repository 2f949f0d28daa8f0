#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "motionattack/tensor.hpp"

namespace motionattack {

/// Recorded computation graph with reverse-mode differentiation.
///
/// The primitive set is closed: matrix multiply, add, elementwise multiply,
/// tanh, sqrt, square, mean-reduce, slice, reshape, concat, plus Input and
/// Constant leaves. DCT encode/decode and every forecaster are expressed in
/// these primitives so the adjoint pass stays auditable. Convenience builders
/// (sub, scale_by, bias_rows, ...) only expand into the primitives above.
///
/// Usage: record the graph once, then run `forward` with bound input values
/// followed by `backward` on a scalar output. A single Tape instance is not
/// thread-safe; copies are independent and may run on distinct threads.
class Tape {
public:
    using Id = int;

    // -- graph construction ---------------------------------------------

    /// Declares a named input of fixed shape. Gradients are returned for
    /// inputs recorded with wants_grad = true.
    Id input(const std::string& name, Shape shape, bool wants_grad = true);
    Id constant(Tensor value);

    Id matmul(Id a, Id b);
    Id add(Id a, Id b);
    Id mul(Id a, Id b);
    Id tanh(Id a);
    Id sqrt(Id a);
    Id square(Id a);
    /// Mean over all elements, result shape {1}.
    Id mean(Id a);
    /// Copies [start, stop) along `axis`; other axes kept whole.
    Id slice(Id a, std::size_t axis, std::size_t start, std::size_t stop);
    Id reshape(Id a, Shape shape);
    Id concat(const std::vector<Id>& parts, std::size_t axis);

    // -- sugar (expands to primitives) -----------------------------------

    Id sub(Id a, Id b);
    Id scale_by(Id a, double s);
    /// rows x 1 ones times a 1 x C row vector: broadcasts a bias/anchor row.
    Id bias_rows(Id row, std::size_t rows);

    void mark_output(const std::string& name, Id v);

    const Shape& shape_of(Id v) const;
    std::size_t num_nodes() const { return nodes_.size(); }

    // -- execution --------------------------------------------------------

    /// Binds named inputs, evaluates every node, returns all marked outputs.
    std::map<std::string, Tensor> forward(const std::map<std::string, Tensor>& inputs);

    /// Reverse pass seeded at a scalar output recorded by mark_output.
    /// Returns gradients for every wants_grad input. Requires a prior
    /// forward; repeated calls are bitwise identical.
    std::map<std::string, Tensor> backward(const std::string& scalar_output);

    /// Value of a marked output from the last forward.
    const Tensor& output(const std::string& name) const;

private:
    enum class Op {
        Input,
        Constant,
        MatMul,
        Add,
        Mul,
        Tanh,
        Sqrt,
        Square,
        Mean,
        Slice,
        Reshape,
        Concat,
    };

    struct Node {
        Op op;
        std::vector<Id> args;
        Shape shape;
        std::string name;        // Input only
        bool wants_grad = false; // Input only
        std::size_t axis = 0;    // Slice / Concat
        std::size_t start = 0;   // Slice
        std::size_t stop = 0;    // Slice
        Tensor value;            // forward buffer (Constant: preset)
        Tensor adjoint;          // backward buffer
    };

    Id push(Node node);
    const Node& node(Id v) const;
    static const char* op_name(Op op);

    void eval(Node& n);
    void accumulate(Node& n);

    std::vector<Node> nodes_;
    std::map<std::string, Id> input_ids_;
    std::map<std::string, Id> output_ids_;
    bool forward_done_ = false;
};

/// Central-difference gradient (f(x+h e_i) - f(x-h e_i)) / 2h per coordinate.
/// Independent oracle for the reverse pass: only calls f.
Tensor finite_diff_grad(const std::function<double(const Tensor&)>& f, const Tensor& x, double h);

}  // namespace motionattack
