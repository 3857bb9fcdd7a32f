#pragma once

namespace hdbf::sf {

// Log-gamma for x > 0 (Lanczos approximation, ~1e-15 relative).
double log_gamma(double x);

// ln Gamma(b+a) - ln Gamma(b): direct for moderate b, Stirling difference
// for b > 1e7 where the naive subtraction loses too many digits.
double log_gamma_ratio(double a, double b);

// ln B(a,b), stable for extreme a/b ratios.
double log_beta(double a, double b);

// Regularized incomplete gamma, P(a,x) + Q(a,x) = 1. Series for x < a+1,
// continued fraction otherwise.
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// Regularized incomplete beta I_x(a,b) via the Lentz continued fraction
// with the symmetry switch at x = (a+1)/(a+b+2).
double reg_inc_beta(double a, double b, double x);

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse normal CDF for q in (0,1); rational initial guess polished by
// Halley steps, exact inverse of normal_cdf to ~1e-15 in q.
double normal_quantile(double q);

// Chi-square with real df > 0. cdf(x) = 0 for x < 0 by convention.
double chi2_pdf(double x, double df);
double chi2_cdf(double x, double df);
double chi2_quantile(double q, double df);

// F distribution with real df pair. cdf(x) = 0 for x < 0 by convention.
double f_pdf(double x, double df1, double df2);
double f_cdf(double x, double df1, double df2);
double f_quantile(double q, double df1, double df2);

}  // namespace hdbf::sf
