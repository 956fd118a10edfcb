#pragma once

namespace ngarch {

// Derivative of lgamma. Recurrence shifts x above 10, then the asymptotic
// series with terms through x^-8; absolute error below 1e-12 for x > 0.
double digamma(double x);

// Standard normal CDF via erfc.
double normal_cdf(double z);

// Upper-tail probability of a chi-square variable with k degrees of freedom,
// P(X >= x). Regularized incomplete gamma Q(k/2, x/2).
double chi_square_sf(double x, int dof);

// E|z| of a standardized Student's t (unit variance) with dof nu > 2.
// Normal limit sqrt(2/pi) as nu -> infinity.
double abs_moment_student_t(double nu);

}  // namespace ngarch
