#include "hdbf/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "hdbf/kernels.hpp"
#include "hdbf/mixture.hpp"
#include "hdbf/special_functions.hpp"

namespace hdbf {

void validate(const SimConfig& config) {
  if (config.p < 1) throw std::invalid_argument("sim config: p must be >= 1");
  if (config.n1 < 3 || config.n2 < 3)
    throw std::invalid_argument("sim config: group sizes must be >= 3");
  if (!(config.rho1 >= 0.0 && config.rho1 < 1.0) ||
      !(config.rho2 >= 0.0 && config.rho2 < 1.0))
    throw std::invalid_argument("sim config: rho must be in [0,1)");
  if (!(config.sigma1_sq > 0.0) || !(config.sigma2_sq > 0.0))
    throw std::invalid_argument("sim config: variance scales must be positive");
  if (!(config.delta >= 0.0)) throw std::invalid_argument("sim config: delta must be >= 0");
  if (config.n_reps < 1) throw std::invalid_argument("sim config: n_reps must be >= 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw std::invalid_argument("sim config: alpha must be in (0,1)");
}

CovarianceSqrt CovarianceSqrt::compound_symmetry(double sigma_sq, double rho,
                                                 std::size_t p) {
  CovarianceSqrt m;
  m.closed_form_ = true;
  const double sigma = std::sqrt(sigma_sq);
  m.a_ = sigma * std::sqrt(1.0 - rho);
  m.b_ = sigma / static_cast<double>(p) *
         (std::sqrt(1.0 - rho + static_cast<double>(p) * rho) - std::sqrt(1.0 - rho));
  return m;
}

CovarianceSqrt CovarianceSqrt::dense_root(Matrix root) {
  CovarianceSqrt m;
  m.closed_form_ = false;
  m.root_ = std::move(root);
  return m;
}

void CovarianceSqrt::apply_in_place(Matrix& z) const {
  if (closed_form_) {
    const std::size_t n = z.rows(), p = z.cols();
    for (std::size_t i = 0; i < n; ++i) {
      double* zi = z.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j < p; ++j) s += zi[j];
      const double add = b_ * s;
      for (std::size_t j = 0; j < p; ++j) zi[j] = a_ * zi[j] + add;
    }
    return;
  }
  if (z.cols() != root_.rows())
    throw std::invalid_argument("covariance sqrt: dimension mismatch");
  z = kernels::matmul(z, root_);  // root is symmetric
}

Matrix CovarianceSqrt::dense(std::size_t p) const {
  if (!closed_form_) return root_;
  Matrix m(p, p, b_);
  for (std::size_t i = 0; i < p; ++i) m(i, i) += a_;
  return m;
}

namespace {

double cs_rho(const SimConfig& c, int group) { return group == 1 ? c.rho1 : c.rho2; }
double cs_var(const SimConfig& c, int group) {
  return group == 1 ? c.sigma1_sq : c.sigma2_sq;
}

Matrix drd_covariance(double rho, std::size_t p) {
  // Sigma = D R D, d_k = (p-k+1)/p, r_kl = (-1)^{k+l} rho^{0.1|k-l|}
  Matrix sigma(p, p);
  const double lr = rho > 0.0 ? std::log(rho) : 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    const double dk = static_cast<double>(p - k) / static_cast<double>(p);
    for (std::size_t l = 0; l < p; ++l) {
      const double dl = static_cast<double>(p - l) / static_cast<double>(p);
      double r;
      if (k == l)
        r = 1.0;
      else if (rho == 0.0)
        r = 0.0;
      else
        r = std::exp(0.1 * std::fabs(static_cast<double>(k) - static_cast<double>(l)) * lr);
      const double sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
      sigma(k, l) = dk * dl * sign * r;
    }
  }
  return sigma;
}

}  // namespace

CovarianceSqrt covariance_sqrt(const SimConfig& config, int group) {
  validate(config);
  if (group != 1 && group != 2)
    throw std::invalid_argument("covariance_sqrt: group must be 1 or 2");
  if (config.cov_family == CovFamily::CompoundSymmetry)
    return CovarianceSqrt::compound_symmetry(cs_var(config, group), cs_rho(config, group),
                                             config.p);
  const Matrix sigma = drd_covariance(cs_rho(config, group), config.p);
  return CovarianceSqrt::dense_root(kernels::sym_sqrt_psd(sigma, 1e-8));
}

Matrix covariance_matrix(const SimConfig& config, int group) {
  if (group != 1 && group != 2)
    throw std::invalid_argument("covariance_matrix: group must be 1 or 2");
  if (config.cov_family == CovFamily::CompoundSymmetry) {
    const double rho = cs_rho(config, group);
    const double var = cs_var(config, group);
    Matrix sigma(config.p, config.p, var * rho);
    for (std::size_t i = 0; i < config.p; ++i) sigma(i, i) = var;
    return sigma;
  }
  return drd_covariance(cs_rho(config, group), config.p);
}

Vector mean_shift(std::size_t p, double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("mean_shift: delta must be >= 0");
  Vector h(p);
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    h[j] = static_cast<double>(j + 1);
    norm_sq += h[j] * h[j];
  }
  const double scale = delta / std::sqrt(norm_sq);
  for (double& v : h) v *= scale;
  return h;
}

double draw_innovation(Rng& rng, Innovation model) {
  switch (model) {
    case Innovation::Normal: return rng.normal();
    case Innovation::ScaledT4: return rng.student_t(4.0) / std::sqrt(2.0);
    case Innovation::ScaledCenteredChi1: {
      const double z = rng.normal();
      return (z * z - 1.0) / std::sqrt(2.0);
    }
  }
  throw std::logic_error("draw_innovation: unknown model");
}

TwoSampleData generate_two_samples(const SimConfig& config, const CovarianceSqrt& root1,
                                   const CovarianceSqrt& root2, const Vector& shift,
                                   std::uint64_t rep_index) {
  Rng rng(config.seed, rep_index);
  TwoSampleData data;
  data.x1 = Matrix(config.n1, config.p);
  data.x2 = Matrix(config.n2, config.p);
  for (Matrix* m : {&data.x1, &data.x2}) {
    double* ptr = m->data();
    for (std::size_t k = 0; k < m->size(); ++k) ptr[k] = draw_innovation(rng, config.model);
  }
  root1.apply_in_place(data.x1);
  root2.apply_in_place(data.x2);
  for (std::size_t i = 0; i < config.n2; ++i) {
    double* xi = data.x2.row(i);
    for (std::size_t j = 0; j < config.p; ++j) xi[j] += shift[j];
  }
  return data;
}

TwoSampleData generate_two_samples(const SimConfig& config, std::uint64_t rep_index) {
  validate(config);
  const CovarianceSqrt root1 = covariance_sqrt(config, 1);
  const CovarianceSqrt root2 = covariance_sqrt(config, 2);
  const Vector shift = mean_shift(config.p, config.delta);
  return generate_two_samples(config, root1, root2, shift, rep_index);
}

CellResult run_cell(const SimConfig& config) {
  validate(config);
  const CovarianceSqrt root1 = covariance_sqrt(config, 1);
  const CovarianceSqrt root2 = covariance_sqrt(config, 2);
  const Vector shift = mean_shift(config.p, config.delta);
  const std::size_t reps = config.n_reps;

  // per-replication records, aggregated in index order afterwards
  constexpr signed char kAccept = 0, kReject = 1, kFailed = 2;
  std::vector<std::array<signed char, 3>> status(reps, {kFailed, kFailed, kFailed});
  Vector d1s(reps, std::numeric_limits<double>::quiet_NaN());
  Vector d2s(reps, std::numeric_limits<double>::quiet_NaN());

#pragma omp parallel for schedule(dynamic)
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const TwoSampleData data =
        generate_two_samples(config, root1, root2, shift, rep);
    TraceSummary ts;
    try {
      ts = trace_summary(data);
    } catch (const std::exception&) {
      continue;  // all three methods stay failed
    }
    try {
      const DfEstimates est = estimate_df(ts);
      d1s[rep] = est.d1_hat;
      d2s[rep] = est.d2_hat;
    } catch (const std::exception&) {
    }
    const auto record = [&](Method m, TestReport (*fn)(const TwoSampleData&,
                                                       const TraceSummary&)) {
      try {
        const TestReport rep_out = fn(data, ts);
        status[rep][static_cast<std::size_t>(m)] =
            rep_out.p_value < config.alpha ? kReject : kAccept;
      } catch (const std::exception&) {
      }
    };
    record(Method::TCQ, &t_cq);
    record(Method::TNP, &t_np);
    record(Method::FNP, &f_np);
  }

  CellResult result;
  result.config = config;
  double d1_sum = 0.0, d2_sum = 0.0;
  std::size_t d_count = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    bool any_failed = false;
    for (std::size_t m = 0; m < 3; ++m) {
      if (status[rep][m] == kFailed) {
        any_failed = true;
      } else {
        ++result.n_valid[m];
        if (status[rep][m] == kReject) ++result.n_reject[m];
      }
    }
    if (any_failed) ++result.n_failed_reps;
    if (std::isfinite(d1s[rep])) {
      d1_sum += d1s[rep];
      d2_sum += d2s[rep];
      ++d_count;
    }
  }
  if (d_count > 0) {
    result.mean_d1_hat = d1_sum / static_cast<double>(d_count);
    result.mean_d2_hat = d2_sum / static_cast<double>(d_count);
  }
  return result;
}

double are_metric(const std::vector<double>& sizes, double alpha) {
  if (sizes.empty()) throw std::invalid_argument("are_metric: empty size list");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("are_metric: alpha must be in (0,1)");
  double s = 0.0;
  for (double v : sizes) s += std::fabs(v - alpha) / alpha;
  return 100.0 * s / static_cast<double>(sizes.size());
}

namespace {

double power_shift_term(double delta, const Matrix& sigma1, const Matrix& sigma2,
                        std::size_t n1, std::size_t n2) {
  const PopulationTraces pt = trace_functionals_population(sigma1, sigma2, n1, n2);
  if (!(pt.tr_omega_sq > 0.0))
    throw std::invalid_argument("theoretical_power: tr(Omega_n^2) is zero");
  const double n = static_cast<double>(n1 + n2);
  const double nn = static_cast<double>(n1) * static_cast<double>(n2) / n;
  return nn * delta * delta / std::sqrt(2.0 * pt.tr_omega_sq);
}

}  // namespace

double theoretical_power_normal(double delta, const Matrix& sigma1, const Matrix& sigma2,
                                std::size_t n1, std::size_t n2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("theoretical_power: alpha must be in (0,1)");
  const double z_alpha = sf::normal_quantile(1.0 - alpha);
  return sf::normal_cdf(-z_alpha + power_shift_term(delta, sigma1, sigma2, n1, n2));
}

double theoretical_power_mixture(double delta, const Matrix& sigma1, const Matrix& sigma2,
                                 std::size_t n1, std::size_t n2, double alpha,
                                 std::size_t n_draws, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("theoretical_power: alpha must be in (0,1)");
  if (n_draws < 1) throw std::invalid_argument("theoretical_power: need draws");
  const MixtureSpec spec = mixture_spec_from_covariances(sigma1, sigma2, n1, n2);
  const ApproxParams ap = population_approx(spec);
  double tr_o2 = 0.0;
  for (double l : spec.lambda_omega) tr_o2 += l * l;
  const double threshold =
      (sf::f_quantile(1.0 - alpha, ap.d1, ap.d2) - 1.0) / std::sqrt(2.0 / ap.d1) -
      power_shift_term(delta, sigma1, sigma2, n1, n2);
  const double root = std::sqrt(tr_o2);
  std::vector<std::size_t> hits(n_draws, 0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n_draws; ++i) {
    Rng rng(seed, i);
    double zeta = 0.0;
    for (double l : spec.lambda_omega) {
      const double z = rng.normal();
      zeta += l / root * (z * z - 1.0);
    }
    zeta /= std::sqrt(2.0);
    hits[i] = zeta >= threshold ? 1 : 0;
  }
  std::size_t total = 0;
  for (std::size_t h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(n_draws);
}

}  // namespace hdbf
