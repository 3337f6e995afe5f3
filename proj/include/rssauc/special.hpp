#pragma once

namespace rssauc {

// Standard normal distribution function.
double normal_cdf(double x);

// Inverse standard normal distribution function (Wichura AS241, ~1e-15).
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Inverse of P(a, .) at probability p, accurate to ~1e-12 relative.
double gamma_p_inverse(double a, double p);

double chi_square_cdf(double x, double df);

// Quantile of the chi-square distribution via the inverse regularized gamma.
double chi_square_quantile(double p, double df);

}  // namespace rssauc
