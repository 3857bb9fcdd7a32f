#include "hdbf/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hdbf::sf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kFpMin = std::numeric_limits<double>::min() / kEps;

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// incomplete gamma by series, x < a+1
double gamma_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < 10000000; ++i) {
    ++ap;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
  }
  throw std::runtime_error("reg_lower_gamma: series failed to converge");
}

// incomplete gamma by Lentz continued fraction, x >= a+1 (gives Q)
double gamma_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps)
      return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
  }
  throw std::runtime_error("reg_upper_gamma: continued fraction failed to converge");
}

double beta_cf(double a, double b, double x) {
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction failed to converge");
}

// Hybrid Newton/bisection inverse of a monotone CDF on [lo, hi]; the
// bracket must already contain the quantile. pdf may return 0 where it
// underflows; the step then falls back to bisection.
template <class Cdf, class Pdf>
double invert_cdf(const Cdf& cdf, const Pdf& pdf, double q, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = cdf(x) - q;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double w = hi - lo;
    if (std::fabs(f) < 1e-14 && w <= 1e-12 * (std::fabs(x) + 1e-300)) return x;
    const double dens = pdf(x);
    double next = (dens > 0.0) ? x - f / dens : x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) {
      if (w <= kEps * (std::fabs(x) + kFpMin)) return x;
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  return x;
}

}  // namespace

double log_gamma(double x) {
  require(x > 0.0, "log_gamma: argument must be positive");
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
      0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double log_gamma_ratio(double a, double b) {
  require(b > 0.0 && a + b > 0.0, "log_gamma_ratio: arguments out of range");
  if (b < 1e7) return log_gamma(b + a) - log_gamma(b);
  // Stirling difference; the 1/(360 z^3) terms are < 1e-24 here
  return a * std::log(b) + (b + a - 0.5) * std::log1p(a / b) - a +
         1.0 / (12.0 * (b + a)) - 1.0 / (12.0 * b);
}

double log_beta(double a, double b) {
  require(a > 0.0 && b > 0.0, "log_beta: arguments must be positive");
  if (a > b) std::swap(a, b);
  if (b >= 1e7) return log_gamma(a) - log_gamma_ratio(a, b);
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double reg_lower_gamma(double a, double x) {
  require(a > 0.0, "reg_lower_gamma: shape must be positive");
  require(x >= 0.0, "reg_lower_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_cf(a, x);
}

double reg_upper_gamma(double a, double x) {
  require(a > 0.0, "reg_upper_gamma: shape must be positive");
  require(x >= 0.0, "reg_upper_gamma: x must be nonnegative");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_cf(a, x);
}

double reg_inc_beta(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, "reg_inc_beta: shape parameters must be positive");
  require(x >= 0.0 && x <= 1.0, "reg_inc_beta: x must be in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double lbt = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double bt = std::exp(lbt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double normal_pdf(double x) { return 0.3989422804014326779 * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double normal_quantile(double q) {
  require(q > 0.0 && q < 1.0, "normal_quantile: q must be in (0,1)");
  // Beasley-Springer-Moro style rational guess
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (q < plow) {
    const double u = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (q <= 1.0 - plow) {
    const double u = q - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - q));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  // two Halley steps on normal_cdf - q
  for (int it = 0; it < 2; ++it) {
    const double e = normal_cdf(x) - q;
    const double dens = normal_pdf(x);
    if (dens <= 0.0) break;
    const double u = e / dens;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double chi2_pdf(double x, double df) {
  require(df > 0.0, "chi2_pdf: df must be positive");
  if (x <= 0.0) return 0.0;
  const double a = 0.5 * df;
  return std::exp((a - 1.0) * std::log(x) - 0.5 * x - a * 0.6931471805599453094 -
                  log_gamma(a));
}

double chi2_cdf(double x, double df) {
  require(df > 0.0, "chi2_cdf: df must be positive");
  if (x <= 0.0) return 0.0;  // mass starts at 0; negative x maps to 0
  return reg_lower_gamma(0.5 * df, 0.5 * x);
}

double chi2_quantile(double q, double df) {
  require(df > 0.0, "chi2_quantile: df must be positive");
  require(q >= 0.0 && q < 1.0, "chi2_quantile: q must be in [0,1)");
  if (q == 0.0) return 0.0;
  // Wilson-Hilferty starting bracket
  const double z = normal_quantile(q);
  const double g = 2.0 / (9.0 * df);
  double guess = df * std::pow(1.0 - g + z * std::sqrt(g), 3);
  if (!(guess > 0.0)) guess = 0.5 * df;
  double lo = 0.0, hi = std::max(guess * 2.0, df + 10.0);
  while (chi2_cdf(hi, df) < q) hi *= 2.0;
  return invert_cdf([df](double x) { return chi2_cdf(x, df); },
                    [df](double x) { return chi2_pdf(x, df); }, q, lo, hi);
}

double f_pdf(double x, double df1, double df2) {
  require(df1 > 0.0 && df2 > 0.0, "f_pdf: df must be positive");
  if (x <= 0.0) return 0.0;
  const double a = 0.5 * df1, b = 0.5 * df2;
  const double lg = a * std::log(df1 / df2) + (a - 1.0) * std::log(x) -
                    (a + b) * std::log1p(df1 * x / df2) - log_beta(a, b);
  return std::exp(lg);
}

double f_cdf(double x, double df1, double df2) {
  require(df1 > 0.0 && df2 > 0.0, "f_cdf: df must be positive");
  if (x <= 0.0) return 0.0;
  const double t = df1 * x / (df1 * x + df2);
  return reg_inc_beta(0.5 * df1, 0.5 * df2, t);
}

double f_quantile(double q, double df1, double df2) {
  require(df1 > 0.0 && df2 > 0.0, "f_quantile: df must be positive");
  require(q >= 0.0 && q < 1.0, "f_quantile: q must be in [0,1)");
  if (q == 0.0) return 0.0;
  double lo = 0.0, hi = 2.0;
  while (f_cdf(hi, df1, df2) < q) hi *= 2.0;
  return invert_cdf([df1, df2](double x) { return f_cdf(x, df1, df2); },
                    [df1, df2](double x) { return f_pdf(x, df1, df2); }, q, lo, hi);
}

}  // namespace hdbf::sf
