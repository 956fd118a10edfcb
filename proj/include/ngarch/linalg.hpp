#pragma once

#include "ngarch/tensor.hpp"

#include <optional>
#include <vector>

namespace ngarch {

// Symmetric positive-definite covariance matrix, sized for small n (a handful
// of assets). Entries are symmetrized on construction to absorb float drift
// from recursions that are symmetric analytically but not bit-exactly.
class CovMatrix {
public:
    // Throws ShapeMismatch on non-square input and on asymmetry beyond 1e-12
    // relative to the largest entry magnitude.
    explicit CovMatrix(const Tensor& entries);
    CovMatrix(int n, const std::vector<double>& row_major);

    static CovMatrix identity(int n);
    static CovMatrix diagonal(const std::vector<double>& diag);

    int dim() const { return n_; }
    double at(int i, int j) const { return m_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<double>& entries() const { return m_; }
    double trace() const;

    // Lower-triangular factor L with L L^T = M (row-major, n x n, upper part
    // zero). If a pivot falls below 1e-12, jitter 1e-10 * trace / n is added
    // once and the factorization retried; a second failure throws
    // NotPositiveDefinite with the offending pivot index. The factor is
    // cached; subsequent calls are free.
    const std::vector<double>& cholesky() const;

    // (log|M|, v^T M^{-1} v) via the Cholesky factor and triangular solves.
    std::pair<double, double> logdet_and_quadform(const std::vector<double>& v) const;

private:
    int n_ = 0;
    std::vector<double> m_;
    mutable std::optional<std::vector<double>> chol_;
};

// Raw factorization used by CovMatrix and by callers that manage their own
// storage: factors the symmetric matrix `a` (row-major n x n) in place into
// the lower triangle of `out`. Returns the index of the failing pivot, or -1
// on success. No jitter here.
int cholesky_lower(int n, const double* a, double* out, double pivot_tol = 0.0);

// Solves L y = b for lower-triangular L (row-major n x n).
void solve_lower(int n, const std::vector<double>& L, const double* b, double* y);

}  // namespace ngarch
