#pragma once

#include <cstddef>

namespace tbechart {

/// Gamma function for x > 0, Lanczos approximation (g = 7, 9 terms).
/// Relative accuracy is a few ulp over (0, 171.6); overflows to +inf
/// beyond that, like the underlying double range.
double gamma_function(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Inverse of P(a, .): the x with P(a, x) = p.
double regularized_gamma_p_inv(double a, double p);

/// Inverse of Q(a, .): the x with Q(a, x) = q. Preferred near the upper
/// tail where 1 - p is not representable.
double regularized_gamma_q_inv(double a, double q);

/// CDF of the chi-squared distribution with df degrees of freedom.
double chi_squared_cdf(double df, double x);

}  // namespace tbechart
