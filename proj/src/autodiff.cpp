#include "ngarch/autodiff.hpp"

#include "ngarch/errors.hpp"
#include "ngarch/special_functions.hpp"

#include <cmath>
#include <cstring>

namespace ngarch::ad {

int Var::rows() const { return tape->rows(*this); }
int Var::cols() const { return tape->cols(*this); }
double Var::scalar() const { return tape->value_scalar(*this); }

int Tape::push(Op op, int rows, int cols, int a, int b) {
    Node n;
    n.op = op;
    n.a = a;
    n.b = b;
    n.rows = rows;
    n.cols = cols;
    n.val = values_.size();
    values_.resize(values_.size() + static_cast<size_t>(rows) * cols);
    nodes_.push_back(n);
    grads_valid_ = false;
    return static_cast<int>(nodes_.size()) - 1;
}

void Tape::check_same_tape(Var v) const {
    if (v.tape != this || v.node < 0 || v.node >= static_cast<int>(nodes_.size()))
        throw ShapeMismatch("variable does not belong to this tape");
}

Var Tape::leaf(const Tensor& v) {
    const int idx = push(Op::Leaf, v.rows, v.cols, -1, -1);
    std::memcpy(val_ptr(idx), v.data.data(), v.data.size() * sizeof(double));
    return {this, idx};
}

Var Tape::constant(const Tensor& v) {
    const int idx = push(Op::Const, v.rows, v.cols, -1, -1);
    std::memcpy(val_ptr(idx), v.data.data(), v.data.size() * sizeof(double));
    return {this, idx};
}

int Tape::rows(Var v) const {
    check_same_tape(v);
    return nodes_[static_cast<size_t>(v.node)].rows;
}

int Tape::cols(Var v) const {
    check_same_tape(v);
    return nodes_[static_cast<size_t>(v.node)].cols;
}

Var Tape::add(Var a, Var b) {
    check_same_tape(a);
    check_same_tape(b);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const Node& nb = nodes_[static_cast<size_t>(b.node)];
    const bool as = na.rows == 1 && na.cols == 1;
    const bool bs = nb.rows == 1 && nb.cols == 1;
    if (!as && !bs && (na.rows != nb.rows || na.cols != nb.cols))
        throw ShapeMismatch("add: incompatible shapes");
    const int rows = as ? nb.rows : na.rows;
    const int cols = as ? nb.cols : na.cols;
    const int idx = push(Op::Add, rows, cols, a.node, b.node);
    const double* pa = val_ptr(a.node);
    const double* pb = val_ptr(b.node);
    double* out = val_ptr(idx);
    const int n = rows * cols;
    for (int i = 0; i < n; ++i) out[i] = pa[as ? 0 : i] + pb[bs ? 0 : i];
    return {this, idx};
}

Var Tape::sub(Var a, Var b) {
    check_same_tape(a);
    check_same_tape(b);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const Node& nb = nodes_[static_cast<size_t>(b.node)];
    const bool as = na.rows == 1 && na.cols == 1;
    const bool bs = nb.rows == 1 && nb.cols == 1;
    if (!as && !bs && (na.rows != nb.rows || na.cols != nb.cols))
        throw ShapeMismatch("sub: incompatible shapes");
    const int rows = as ? nb.rows : na.rows;
    const int cols = as ? nb.cols : na.cols;
    const int idx = push(Op::Sub, rows, cols, a.node, b.node);
    const double* pa = val_ptr(a.node);
    const double* pb = val_ptr(b.node);
    double* out = val_ptr(idx);
    const int n = rows * cols;
    for (int i = 0; i < n; ++i) out[i] = pa[as ? 0 : i] - pb[bs ? 0 : i];
    return {this, idx};
}

Var Tape::mul(Var a, Var b) {
    check_same_tape(a);
    check_same_tape(b);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const Node& nb = nodes_[static_cast<size_t>(b.node)];
    const bool as = na.rows == 1 && na.cols == 1;
    const bool bs = nb.rows == 1 && nb.cols == 1;
    if (!as && !bs && (na.rows != nb.rows || na.cols != nb.cols))
        throw ShapeMismatch("mul: incompatible shapes");
    const int rows = as ? nb.rows : na.rows;
    const int cols = as ? nb.cols : na.cols;
    const int idx = push(Op::Mul, rows, cols, a.node, b.node);
    const double* pa = val_ptr(a.node);
    const double* pb = val_ptr(b.node);
    double* out = val_ptr(idx);
    const int n = rows * cols;
    for (int i = 0; i < n; ++i) out[i] = pa[as ? 0 : i] * pb[bs ? 0 : i];
    return {this, idx};
}

Var Tape::div(Var a, Var b) {
    check_same_tape(a);
    check_same_tape(b);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const Node& nb = nodes_[static_cast<size_t>(b.node)];
    const bool as = na.rows == 1 && na.cols == 1;
    const bool bs = nb.rows == 1 && nb.cols == 1;
    if (!as && !bs && (na.rows != nb.rows || na.cols != nb.cols))
        throw ShapeMismatch("div: incompatible shapes");
    const int rows = as ? nb.rows : na.rows;
    const int cols = as ? nb.cols : na.cols;
    const int idx = push(Op::Div, rows, cols, a.node, b.node);
    const double* pa = val_ptr(a.node);
    const double* pb = val_ptr(b.node);
    double* out = val_ptr(idx);
    const int n = rows * cols;
    for (int i = 0; i < n; ++i) out[i] = pa[as ? 0 : i] / pb[bs ? 0 : i];
    return {this, idx};
}

Var Tape::max(Var a, Var b) {
    check_same_tape(a);
    check_same_tape(b);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const Node& nb = nodes_[static_cast<size_t>(b.node)];
    const bool as = na.rows == 1 && na.cols == 1;
    const bool bs = nb.rows == 1 && nb.cols == 1;
    if (!as && !bs && (na.rows != nb.rows || na.cols != nb.cols))
        throw ShapeMismatch("max: incompatible shapes");
    const int rows = as ? nb.rows : na.rows;
    const int cols = as ? nb.cols : na.cols;
    const int idx = push(Op::Max, rows, cols, a.node, b.node);
    const double* pa = val_ptr(a.node);
    const double* pb = val_ptr(b.node);
    double* out = val_ptr(idx);
    const int n = rows * cols;
    for (int i = 0; i < n; ++i) {
        const double x = pa[as ? 0 : i];
        const double y = pb[bs ? 0 : i];
        out[i] = x >= y ? x : y;
    }
    return {this, idx};
}

Var Tape::matmul(Var a, Var b) {
    check_same_tape(a);
    check_same_tape(b);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const Node& nb = nodes_[static_cast<size_t>(b.node)];
    if (na.cols != nb.rows) throw ShapeMismatch("matmul: inner dimensions differ");
    const int m = na.rows, k = na.cols, n = nb.cols;
    const int idx = push(Op::MatMul, m, n, a.node, b.node);
    const double* pa = val_ptr(a.node);
    const double* pb = val_ptr(b.node);
    double* out = val_ptr(idx);
    for (int i = 0; i < m; ++i) {
        double* orow = out + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) orow[j] = 0.0;
        for (int l = 0; l < k; ++l) {
            const double av = pa[static_cast<size_t>(i) * k + l];
            const double* brow = pb + static_cast<size_t>(l) * n;
            for (int j = 0; j < n; ++j) orow[j] += av * brow[j];
        }
    }
    return {this, idx};
}

Var Tape::transpose(Var a) {
    check_same_tape(a);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const int idx = push(Op::Transpose, na.cols, na.rows, a.node, -1);
    const double* pa = val_ptr(a.node);
    double* out = val_ptr(idx);
    for (int i = 0; i < na.rows; ++i)
        for (int j = 0; j < na.cols; ++j)
            out[static_cast<size_t>(j) * na.rows + i] = pa[static_cast<size_t>(i) * na.cols + j];
    return {this, idx};
}

Var Tape::sum(Var a) {
    check_same_tape(a);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const int idx = push(Op::Sum, 1, 1, a.node, -1);
    const double* pa = val_ptr(a.node);
    double s = 0.0;
    const int n = na.rows * na.cols;
    for (int i = 0; i < n; ++i) s += pa[i];
    *val_ptr(idx) = s;
    return {this, idx};
}

#define NGARCH_UNARY(NAME, OPKIND, EXPR, DOMAIN_CHECK)                                   \
    Var Tape::NAME(Var a) {                                                              \
        check_same_tape(a);                                                              \
        const Node& na = nodes_[static_cast<size_t>(a.node)];                            \
        const int idx = push(OPKIND, na.rows, na.cols, a.node, -1);                      \
        const double* pa = val_ptr(a.node);                                              \
        double* out = val_ptr(idx);                                                      \
        const int n = na.rows * na.cols;                                                 \
        for (int i = 0; i < n; ++i) {                                                    \
            const double x = pa[i];                                                      \
            DOMAIN_CHECK;                                                                \
            out[i] = EXPR;                                                               \
        }                                                                                \
        return {this, idx};                                                              \
    }

NGARCH_UNARY(log, Op::Log, std::log(x),
             if (!(x > 0.0)) throw DomainError("log of non-positive input"))
NGARCH_UNARY(exp, Op::Exp, std::exp(x), )
NGARCH_UNARY(sqrt, Op::Sqrt, std::sqrt(x),
             if (!(x > 0.0)) throw DomainError("sqrt of non-positive input"))
NGARCH_UNARY(square, Op::Square, x * x, )
NGARCH_UNARY(sigmoid, Op::Sigmoid, 1.0 / (1.0 + std::exp(-x)), )
NGARCH_UNARY(tanh, Op::Tanh, std::tanh(x), )
NGARCH_UNARY(relu, Op::Relu, x > 0.0 ? x : 0.0, )
NGARCH_UNARY(lgamma, Op::Lgamma, std::lgamma(x),
             if (!(x > 0.0)) throw DomainError("lgamma of non-positive input"))

#undef NGARCH_UNARY

Var Tape::concat(Var a, Var b) {
    check_same_tape(a);
    check_same_tape(b);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    const Node& nb = nodes_[static_cast<size_t>(b.node)];
    if (na.cols != nb.cols) throw ShapeMismatch("concat: column counts differ");
    const int idx = push(Op::Concat, na.rows + nb.rows, na.cols, a.node, b.node);
    double* out = val_ptr(idx);
    std::memcpy(out, val_ptr(a.node), static_cast<size_t>(na.rows) * na.cols * sizeof(double));
    std::memcpy(out + static_cast<size_t>(na.rows) * na.cols, val_ptr(b.node),
                static_cast<size_t>(nb.rows) * nb.cols * sizeof(double));
    return {this, idx};
}

Var Tape::slice(Var a, int r0, int r1, int c0, int c1) {
    check_same_tape(a);
    const Node& na = nodes_[static_cast<size_t>(a.node)];
    if (r0 < 0 || c0 < 0 || r1 > na.rows || c1 > na.cols || r0 >= r1 || c0 >= c1)
        throw ShapeMismatch("slice: bounds out of range");
    const int idx = push(Op::Slice, r1 - r0, c1 - c0, a.node, -1);
    Node& n = nodes_[static_cast<size_t>(idx)];
    n.aux[0] = r0;
    n.aux[1] = r1;
    n.aux[2] = c0;
    n.aux[3] = c1;
    const double* pa = val_ptr(a.node);
    double* out = val_ptr(idx);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j)
            out[static_cast<size_t>(i - r0) * (c1 - c0) + (j - c0)] =
                pa[static_cast<size_t>(i) * na.cols + j];
    return {this, idx};
}

void Tape::backward(Var loss) {
    check_same_tape(loss);
    const Node& ln = nodes_[static_cast<size_t>(loss.node)];
    if (ln.rows != 1 || ln.cols != 1) throw NonScalarLoss();

    grads_.assign(values_.size(), 0.0);
    grads_[ln.val] = 1.0;

    for (int idx = loss.node; idx >= 0; --idx) backward_node(idx, grads_);
    grads_valid_ = true;
}

void Tape::backward_node(int idx, std::vector<double>& grads) {
    const Node& n = nodes_[static_cast<size_t>(idx)];
    if (n.op == Op::Leaf || n.op == Op::Const) return;

    const double* g = grads.data() + n.val;
    const int count = n.rows * n.cols;

    const Node* na = n.a >= 0 ? &nodes_[static_cast<size_t>(n.a)] : nullptr;
    const Node* nb = n.b >= 0 ? &nodes_[static_cast<size_t>(n.b)] : nullptr;
    double* ga = na ? grads.data() + na->val : nullptr;
    double* gb = nb ? grads.data() + nb->val : nullptr;
    const double* va = na ? val_ptr(n.a) : nullptr;
    const double* vb = nb ? val_ptr(n.b) : nullptr;
    const double* vo = val_ptr(idx);
    const bool as = na && na->rows == 1 && na->cols == 1;
    const bool bs = nb && nb->rows == 1 && nb->cols == 1;

    switch (n.op) {
        case Op::Add:
            for (int i = 0; i < count; ++i) {
                ga[as ? 0 : i] += g[i];
                gb[bs ? 0 : i] += g[i];
            }
            break;
        case Op::Sub:
            for (int i = 0; i < count; ++i) {
                ga[as ? 0 : i] += g[i];
                gb[bs ? 0 : i] -= g[i];
            }
            break;
        case Op::Mul:
            for (int i = 0; i < count; ++i) {
                ga[as ? 0 : i] += g[i] * vb[bs ? 0 : i];
                gb[bs ? 0 : i] += g[i] * va[as ? 0 : i];
            }
            break;
        case Op::Div:
            for (int i = 0; i < count; ++i) {
                const double bi = vb[bs ? 0 : i];
                ga[as ? 0 : i] += g[i] / bi;
                gb[bs ? 0 : i] -= g[i] * vo[i] / bi;
            }
            break;
        case Op::Max:
            for (int i = 0; i < count; ++i) {
                if (va[as ? 0 : i] >= vb[bs ? 0 : i])
                    ga[as ? 0 : i] += g[i];
                else
                    gb[bs ? 0 : i] += g[i];
            }
            break;
        case Op::MatMul: {
            const int m = n.rows, nn = n.cols, k = na->cols;
            // dA += G * B^T
            for (int i = 0; i < m; ++i) {
                const double* grow = g + static_cast<size_t>(i) * nn;
                double* garow = ga + static_cast<size_t>(i) * k;
                for (int l = 0; l < k; ++l) {
                    const double* brow = vb + static_cast<size_t>(l) * nn;
                    double acc = 0.0;
                    for (int j = 0; j < nn; ++j) acc += grow[j] * brow[j];
                    garow[l] += acc;
                }
            }
            // dB += A^T * G
            for (int l = 0; l < k; ++l) {
                double* gbrow = gb + static_cast<size_t>(l) * nn;
                for (int i = 0; i < m; ++i) {
                    const double av = va[static_cast<size_t>(i) * k + l];
                    const double* grow = g + static_cast<size_t>(i) * nn;
                    for (int j = 0; j < nn; ++j) gbrow[j] += av * grow[j];
                }
            }
            break;
        }
        case Op::Transpose:
            for (int i = 0; i < n.rows; ++i)
                for (int j = 0; j < n.cols; ++j)
                    ga[static_cast<size_t>(j) * n.rows + i] +=
                        g[static_cast<size_t>(i) * n.cols + j];
            break;
        case Op::Sum: {
            const int an = na->rows * na->cols;
            for (int i = 0; i < an; ++i) ga[i] += g[0];
            break;
        }
        case Op::Log:
            for (int i = 0; i < count; ++i) ga[i] += g[i] / va[i];
            break;
        case Op::Exp:
            for (int i = 0; i < count; ++i) ga[i] += g[i] * vo[i];
            break;
        case Op::Sqrt:
            for (int i = 0; i < count; ++i) ga[i] += g[i] * 0.5 / vo[i];
            break;
        case Op::Square:
            for (int i = 0; i < count; ++i) ga[i] += g[i] * 2.0 * va[i];
            break;
        case Op::Sigmoid:
            for (int i = 0; i < count; ++i) ga[i] += g[i] * vo[i] * (1.0 - vo[i]);
            break;
        case Op::Tanh:
            for (int i = 0; i < count; ++i) ga[i] += g[i] * (1.0 - vo[i] * vo[i]);
            break;
        case Op::Relu:
            for (int i = 0; i < count; ++i)
                if (va[i] > 0.0) ga[i] += g[i];
            break;
        case Op::Lgamma:
            for (int i = 0; i < count; ++i) ga[i] += g[i] * digamma(va[i]);
            break;
        case Op::Concat: {
            const int an = na->rows * na->cols;
            const int bn = nb->rows * nb->cols;
            for (int i = 0; i < an; ++i) ga[i] += g[i];
            for (int i = 0; i < bn; ++i) gb[i] += g[an + i];
            break;
        }
        case Op::Slice: {
            const int r0 = n.aux[0], r1 = n.aux[1], c0 = n.aux[2], c1 = n.aux[3];
            for (int i = r0; i < r1; ++i)
                for (int j = c0; j < c1; ++j)
                    ga[static_cast<size_t>(i) * na->cols + j] +=
                        g[static_cast<size_t>(i - r0) * (c1 - c0) + (j - c0)];
            break;
        }
        case Op::Leaf:
        case Op::Const:
            break;
    }
}

std::span<const double> Tape::value(Var v) const {
    check_same_tape(v);
    const Node& n = nodes_[static_cast<size_t>(v.node)];
    return {values_.data() + n.val, static_cast<size_t>(n.rows) * n.cols};
}

std::span<const double> Tape::grad(Var v) const {
    check_same_tape(v);
    if (!grads_valid_) throw Error("gradients requested before backward()");
    const Node& n = nodes_[static_cast<size_t>(v.node)];
    return {grads_.data() + n.val, static_cast<size_t>(n.rows) * n.cols};
}

double Tape::value_scalar(Var v) const {
    auto s = value(v);
    if (s.size() != 1) throw ShapeMismatch("value_scalar on non-scalar variable");
    return s[0];
}

Tensor Tape::value_tensor(Var v) const {
    check_same_tape(v);
    const Node& n = nodes_[static_cast<size_t>(v.node)];
    Tensor t(n.rows, n.cols);
    auto s = value(v);
    std::copy(s.begin(), s.end(), t.data.begin());
    return t;
}

Tensor Tape::grad_tensor(Var v) const {
    check_same_tape(v);
    const Node& n = nodes_[static_cast<size_t>(v.node)];
    Tensor t(n.rows, n.cols);
    auto s = grad(v);
    std::copy(s.begin(), s.end(), t.data.begin());
    return t;
}

void Tape::reset() {
    nodes_.clear();
    values_.clear();
    grads_.clear();
    grads_valid_ = false;
}

}  // namespace ngarch::ad
