#pragma once

namespace rtd::nist {

/// Complementary error function.
double erfc(double x);

/// Regularized lower incomplete gamma P(a, x). Requires a > 0, x >= 0.
double igam(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x). Requires a > 0, x >= 0.
double igamc(double a, double x);

/// Standard normal cumulative distribution function.
double normal_cdf(double x);

}  // namespace rtd::nist
