#include "ngarch/special_functions.hpp"

#include "ngarch/errors.hpp"

#include <cmath>
#include <limits>

namespace ngarch {

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double inv4 = inv2 * inv2;
    const double inv6 = inv4 * inv2;
    const double inv8 = inv4 * inv4;
    result += std::log(x) - 0.5 * inv - (1.0 / 12.0) * inv2 + (1.0 / 120.0) * inv4 -
              (1.0 / 252.0) * inv6 + (1.0 / 240.0) * inv8;
    return result;
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi_square_sf(double x, int dof) {
    if (dof < 1) throw DomainError("chi_square_sf requires dof >= 1");
    if (x <= 0.0) return 1.0;
    const double a = 0.5 * dof;
    const double xs = 0.5 * x;
    if (xs < a + 1.0) return 1.0 - gamma_p_series(a, xs);
    return gamma_q_cf(a, xs);
}

double abs_moment_student_t(double nu) {
    if (!(nu > 2.0)) throw DegreesOfFreedomTooSmall(nu);
    // E|z| = 2 sqrt(nu-2) Gamma((nu+1)/2) / (sqrt(pi) (nu-1) Gamma(nu/2)),
    // evaluated in log space; for very large nu the lgamma difference
    // underflows to the normal value sqrt(2/pi).
    const double pi = 3.14159265358979323846;
    if (nu > 1e12) return std::sqrt(2.0 / pi);
    const double log_e = std::log(2.0) + 0.5 * std::log(nu - 2.0) - 0.5 * std::log(pi) -
                         std::log(nu - 1.0) + std::lgamma(0.5 * (nu + 1.0)) -
                         std::lgamma(0.5 * nu);
    return std::exp(log_e);
}

}  // namespace ngarch
