#pragma once

#include "ngarch/tensor.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ngarch::ad {

enum class Op : uint8_t {
    Leaf,
    Const,
    Add,
    Sub,
    Mul,
    Div,
    MatMul,
    Transpose,
    Sum,
    Log,
    Exp,
    Sqrt,
    Square,
    Sigmoid,
    Tanh,
    Relu,
    Lgamma,
    Max,
    Concat,
    Slice,
};

class Tape;

// Handle into a tape. Cheap to copy; only valid for the tape generation it
// was created on (reset() invalidates all handles).
struct Var {
    Tape* tape = nullptr;
    int node = -1;

    bool valid() const { return tape != nullptr && node >= 0; }
    int rows() const;
    int cols() const;
    bool is_scalar() const { return rows() == 1 && cols() == 1; }
    double scalar() const;
};

// Eagerly evaluated reverse-mode tape. Nodes append in topological order;
// values live in a bump arena reused across reset() calls, so rebuilding the
// graph every training step costs no allocation in steady state.
class Tape {
public:
    Var leaf(const Tensor& v);
    Var constant(const Tensor& v);
    Var constant(double v) { return constant(Tensor::scalar(v)); }

    // Elementwise binary ops take same-shape operands, or a scalar on either
    // side (the only broadcast supported).
    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var mul(Var a, Var b);
    Var div(Var a, Var b);
    Var max(Var a, Var b);

    Var matmul(Var a, Var b);
    Var transpose(Var a);
    Var sum(Var a);  // all entries -> scalar

    Var log(Var a);
    Var exp(Var a);
    Var sqrt(Var a);
    Var square(Var a);
    Var sigmoid(Var a);
    Var tanh(Var a);
    Var relu(Var a);
    Var lgamma(Var a);

    Var concat(Var a, Var b);  // stack rows; operands need equal column counts
    Var slice(Var a, int r0, int r1, int c0, int c1);

    Var neg(Var a) { return sub(constant(0.0), a); }

    // Single backward pass from a scalar loss; gradients accumulate into
    // per-node buffers zeroed here. Throws NonScalarLoss.
    void backward(Var loss);

    std::span<const double> value(Var v) const;
    std::span<const double> grad(Var v) const;
    double value_scalar(Var v) const;
    Tensor value_tensor(Var v) const;
    Tensor grad_tensor(Var v) const;
    int rows(Var v) const;
    int cols(Var v) const;

    void reset();
    size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        Op op;
        int a = -1;
        int b = -1;
        int rows = 0;
        int cols = 0;
        size_t val = 0;      // offset into values_/grads_
        int aux[4] = {0, 0, 0, 0};
    };

    int push(Op op, int rows, int cols, int a, int b);
    double* val_ptr(int node) { return values_.data() + nodes_[static_cast<size_t>(node)].val; }
    const double* val_ptr(int node) const {
        return values_.data() + nodes_[static_cast<size_t>(node)].val;
    }
    void check_same_tape(Var v) const;
    void backward_node(int idx, std::vector<double>& grads);

    std::vector<Node> nodes_;
    std::vector<double> values_;
    std::vector<double> grads_;
    bool grads_valid_ = false;
};

}  // namespace ngarch::ad
