#include "ngarch/linalg.hpp"

#include "ngarch/errors.hpp"

#include <cmath>

namespace ngarch {

CovMatrix::CovMatrix(const Tensor& entries) {
    if (entries.rows != entries.cols || entries.rows < 1)
        throw ShapeMismatch("covariance matrix must be square");
    n_ = entries.rows;
    m_.resize(static_cast<size_t>(n_) * n_);

    double max_abs = 0.0;
    double max_asym = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const double a = entries.at(i, j);
            max_abs = std::max(max_abs, std::fabs(a));
            max_asym = std::max(max_asym, std::fabs(a - entries.at(j, i)));
        }
    }
    if (max_abs > 0.0 && max_asym > 1e-12 * std::max(1.0, max_abs))
        throw ShapeMismatch("matrix asymmetric beyond tolerance");

    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            m_[static_cast<size_t>(i) * n_ + j] = 0.5 * (entries.at(i, j) + entries.at(j, i));
}

CovMatrix::CovMatrix(int n, const std::vector<double>& row_major)
    : CovMatrix([&] {
          Tensor t(n, n);
          t.data = row_major;
          return t;
      }()) {}

CovMatrix CovMatrix::identity(int n) {
    Tensor t(n, n);
    for (int i = 0; i < n; ++i) t.at(i, i) = 1.0;
    return CovMatrix(t);
}

CovMatrix CovMatrix::diagonal(const std::vector<double>& diag) {
    Tensor t(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (size_t i = 0; i < diag.size(); ++i) t.at(static_cast<int>(i), static_cast<int>(i)) = diag[i];
    return CovMatrix(t);
}

double CovMatrix::trace() const {
    double tr = 0.0;
    for (int i = 0; i < n_; ++i) tr += at(i, i);
    return tr;
}

int cholesky_lower(int n, const double* a, double* out, double pivot_tol) {
    for (int i = 0; i < n * n; ++i) out[i] = 0.0;
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            const double l = out[static_cast<size_t>(j) * n + k];
            d -= l * l;
        }
        if (!(d > pivot_tol)) return j;
        const double ljj = std::sqrt(d);
        out[static_cast<size_t>(j) * n + j] = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a[static_cast<size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= out[static_cast<size_t>(i) * n + k] * out[static_cast<size_t>(j) * n + k];
            out[static_cast<size_t>(i) * n + j] = s / ljj;
        }
    }
    return -1;
}

const std::vector<double>& CovMatrix::cholesky() const {
    if (chol_) return *chol_;
    std::vector<double> L(static_cast<size_t>(n_) * n_);
    int fail = cholesky_lower(n_, m_.data(), L.data(), 1e-12);
    if (fail >= 0) {
        const double jitter = 1e-10 * trace() / n_;
        std::vector<double> jittered = m_;
        for (int i = 0; i < n_; ++i) jittered[static_cast<size_t>(i) * n_ + i] += jitter;
        fail = cholesky_lower(n_, jittered.data(), L.data(), 0.0);
        if (fail >= 0) throw NotPositiveDefinite(fail);
    }
    chol_ = std::move(L);
    return *chol_;
}

void solve_lower(int n, const std::vector<double>& L, const double* b, double* y) {
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= L[static_cast<size_t>(i) * n + k] * y[k];
        y[i] = s / L[static_cast<size_t>(i) * n + i];
    }
}

std::pair<double, double> CovMatrix::logdet_and_quadform(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != n_)
        throw ShapeMismatch("quadform vector dimension mismatch");
    const auto& L = cholesky();
    double logdet = 0.0;
    for (int i = 0; i < n_; ++i) logdet += std::log(L[static_cast<size_t>(i) * n_ + i]);
    logdet *= 2.0;

    // v^T M^{-1} v = ||L^{-1} v||^2
    std::vector<double> y(n_);
    solve_lower(n_, L, v.data(), y.data());
    double q = 0.0;
    for (int i = 0; i < n_; ++i) q += y[i] * y[i];

    if (!std::isfinite(logdet) || !std::isfinite(q))
        throw NonPositiveVariance("non-finite log-determinant or quadratic form");
    return {logdet, q};
}

}  // namespace ngarch
