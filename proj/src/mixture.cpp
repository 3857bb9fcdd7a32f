#include "hdbf/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hdbf/kernels.hpp"
#include "hdbf/rng.hpp"
#include "hdbf/special_functions.hpp"

namespace hdbf {

namespace {

double power_sum(const Vector& v, int k) {
  double s = 0.0;
  for (double x : v) {
    double t = x;
    for (int i = 1; i < k; ++i) t *= x;
    s += t;
  }
  return s;
}

Vector descending_clipped_eigenvalues(const Matrix& m) {
  kernels::SymEig eig = kernels::sym_eig(m);
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::fabs(v));
  const double floor = -1e-10 * std::max(1.0, scale);
  Vector out(eig.values.rbegin(), eig.values.rend());
  for (double& v : out) {
    if (v < floor) throw std::invalid_argument("mixture spec: covariance is not PSD");
    if (v < 0.0) v = 0.0;
  }
  return out;
}

}  // namespace

void validate(const MixtureSpec& spec) {
  if (spec.lambda_omega.empty() || spec.lambda1.empty() || spec.lambda2.empty())
    throw std::invalid_argument("mixture spec: empty spectrum");
  if (spec.n1 < 2 || spec.n2 < 2)
    throw std::invalid_argument("mixture spec: group sizes must be at least 2");
  for (const Vector* v : {&spec.lambda_omega, &spec.lambda1, &spec.lambda2}) {
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!((*v)[i] >= 0.0))
        throw std::invalid_argument("mixture spec: negative eigenvalue");
      if (i > 0 && (*v)[i] > (*v)[i - 1] * (1.0 + 1e-12) + 1e-12)
        throw std::invalid_argument("mixture spec: eigenvalues must be descending");
    }
  }
}

MixtureSpec mixture_spec_from_covariances(const Matrix& sigma1, const Matrix& sigma2,
                                          std::size_t n1, std::size_t n2) {
  if (sigma1.rows() != sigma2.rows())
    throw std::invalid_argument("mixture spec: covariance dimensions differ");
  const double n = static_cast<double>(n1 + n2);
  const std::size_t p = sigma1.rows();
  Matrix omega(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      omega(i, j) = static_cast<double>(n2) / n * sigma1(i, j) +
                    static_cast<double>(n1) / n * sigma2(i, j);
  MixtureSpec spec;
  spec.lambda_omega = descending_clipped_eigenvalues(omega);
  spec.lambda1 = descending_clipped_eigenvalues(sigma1);
  spec.lambda2 = descending_clipped_eigenvalues(sigma2);
  spec.n1 = n1;
  spec.n2 = n2;
  validate(spec);
  return spec;
}

Cumulants cumulants_t_star(const MixtureSpec& spec) {
  validate(spec);
  Cumulants c;
  c.k1 = power_sum(spec.lambda_omega, 1);
  c.k2 = 2.0 * power_sum(spec.lambda_omega, 2);
  c.k3 = 8.0 * power_sum(spec.lambda_omega, 3);
  return c;
}

Cumulants cumulants_s_star(const MixtureSpec& spec) {
  validate(spec);
  const double n1 = static_cast<double>(spec.n1);
  const double n2 = static_cast<double>(spec.n2);
  const double n = n1 + n2;
  const double t1 = power_sum(spec.lambda1, 1), t2 = power_sum(spec.lambda2, 1);
  const double q1 = power_sum(spec.lambda1, 2), q2 = power_sum(spec.lambda2, 2);
  const double c1 = power_sum(spec.lambda1, 3), c2 = power_sum(spec.lambda2, 3);
  Cumulants c;
  c.k1 = n2 / n * t1 + n1 / n * t2;
  c.k2 = 2.0 * (n2 * n2 / (n * n * (n1 - 1.0)) * q1 + n1 * n1 / (n * n * (n2 - 1.0)) * q2);
  c.k3 = 8.0 * (n2 * n2 * n2 / (n * n * n * (n1 - 1.0) * (n1 - 1.0)) * c1 +
                n1 * n1 * n1 / (n * n * n * (n2 - 1.0) * (n2 - 1.0)) * c2);
  return c;
}

FStarCumulants cumulants_f_star(const MixtureSpec& spec) {
  validate(spec);
  const double n1 = static_cast<double>(spec.n1);
  const double n2 = static_cast<double>(spec.n2);
  const double n = n1 + n2;
  const double tr_o = power_sum(spec.lambda_omega, 1);
  if (!(tr_o > 0.0)) throw std::invalid_argument("cumulants_f_star: tr(Omega_n) is zero");
  const double tr_o2 = power_sum(spec.lambda_omega, 2);
  const double tr_o3 = power_sum(spec.lambda_omega, 3);
  const double q1 = power_sum(spec.lambda1, 2), q2 = power_sum(spec.lambda2, 2);
  const double c1 = power_sum(spec.lambda1, 3), c2 = power_sum(spec.lambda2, 3);

  FStarCumulants f;
  f.k1 = 1.0;
  f.k2 = 2.0 * (tr_o2 / (tr_o * tr_o) +
                (n2 * n2 / (n1 - 1.0) * q1 + n1 * n1 / (n2 - 1.0) * q2) /
                    (n * n * tr_o * tr_o));
  f.k3 = 8.0 * (tr_o3 / (tr_o * tr_o * tr_o) +
                (n2 * n2 * n2 / ((n1 - 1.0) * (n1 - 1.0)) * c1 +
                 n1 * n1 * n1 / ((n2 - 1.0) * (n2 - 1.0)) * c2) /
                    (n * n * n * tr_o * tr_o * tr_o));
  f.d_star = (tr_o2 * tr_o2 * tr_o2) / (tr_o3 * tr_o3);
  f.skewness = std::sqrt(8.0 / f.d_star);
  return f;
}

ApproxParams population_approx(const MixtureSpec& spec) {
  validate(spec);
  const double n1 = static_cast<double>(spec.n1);
  const double n2 = static_cast<double>(spec.n2);
  const double n = n1 + n2;
  const double tr_o = power_sum(spec.lambda_omega, 1);
  const double tr_o2 = power_sum(spec.lambda_omega, 2);
  const double q1 = power_sum(spec.lambda1, 2), q2 = power_sum(spec.lambda2, 2);
  if (!(tr_o > 0.0) || !(tr_o2 > 0.0))
    throw std::invalid_argument("population_approx: degenerate spectrum");
  ApproxParams ap;
  ap.beta1 = tr_o2 / tr_o;
  ap.d1 = tr_o * tr_o / tr_o2;
  const double den = n2 * n2 / (n * n * (n1 - 1.0)) * q1 +
                     n1 * n1 / (n * n * (n2 - 1.0)) * q2;
  if (!(den > 0.0)) throw std::invalid_argument("population_approx: degenerate denominator");
  ap.beta2 = den / tr_o;
  ap.d2 = tr_o * tr_o / den;
  return ap;
}

Vector sample_f_star(const MixtureSpec& spec, std::size_t n_draws, std::uint64_t seed) {
  validate(spec);
  if (n_draws < 1) throw std::invalid_argument("sample_f_star: need at least one draw");
  const double n1 = static_cast<double>(spec.n1);
  const double n2 = static_cast<double>(spec.n2);
  const double n = n1 + n2;
  const double w1 = n2 / (n1 - 1.0) / n;
  const double w2 = n1 / (n2 - 1.0) / n;
  Vector out(n_draws);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n_draws; ++i) {
    Rng rng(seed, i);
    double num = 0.0;
    for (double l : spec.lambda_omega) {
      const double z = rng.normal();
      num += l * z * z;  // chi-square(1)
    }
    double den = 0.0;
    for (double l : spec.lambda1) den += w1 * l * rng.chi_square(n1 - 1.0);
    for (double l : spec.lambda2) den += w2 * l * rng.chi_square(n2 - 1.0);
    out[i] = num / den;
  }
  return out;
}

double ks_distance(Vector sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    ks = std::max(ks, std::max(std::fabs(f - lo), std::fabs(hi - f)));
  }
  return ks;
}

double approximation_quality(const MixtureSpec& spec, std::size_t n_draws,
                             std::uint64_t seed) {
  const ApproxParams ap = population_approx(spec);
  Vector draws = sample_f_star(spec, n_draws, seed);
  return ks_distance(std::move(draws),
                     [&](double x) { return sf::f_cdf(x, ap.d1, ap.d2); });
}

}  // namespace hdbf
