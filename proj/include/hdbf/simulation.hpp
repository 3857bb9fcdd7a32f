#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "hdbf/mean_tests.hpp"
#include "hdbf/rng.hpp"
#include "hdbf/traces.hpp"

namespace hdbf {

// Innovation law for the factor model, standardized to mean 0 variance 1:
// standard normal, t4/sqrt(2), or (chi2_1 - 1)/sqrt(2).
enum class Innovation { Normal, ScaledT4, ScaledCenteredChi1 };

enum class CovFamily { CompoundSymmetry, DRD };

struct SimConfig {
  Innovation model = Innovation::Normal;
  CovFamily cov_family = CovFamily::CompoundSymmetry;
  std::size_t p = 50;
  std::size_t n1 = 30;
  std::size_t n2 = 50;
  double rho1 = 0.1;
  double rho2 = 0.1;
  double sigma1_sq = 1.0;  // CompoundSymmetry only
  double sigma2_sq = 2.0;
  double delta = 0.0;
  std::size_t n_reps = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;
};

void validate(const SimConfig& config);

// Sigma^{1/2} as an operator on observation rows. Compound symmetry keeps
// the closed form a I + b J; DRD materializes the symmetric root once per
// cell.
class CovarianceSqrt {
public:
  static CovarianceSqrt compound_symmetry(double sigma_sq, double rho, std::size_t p);
  static CovarianceSqrt dense_root(Matrix root);

  // z <- z M, M the symmetric root; rows are observations
  void apply_in_place(Matrix& z) const;
  // explicit root matrix (tests and population functionals)
  Matrix dense(std::size_t p) const;

private:
  CovarianceSqrt() = default;
  bool closed_form_ = false;
  double a_ = 0.0, b_ = 0.0;
  Matrix root_;
};

CovarianceSqrt covariance_sqrt(const SimConfig& config, int group);
// Explicit covariance matrix for the configured family (desk-scale p).
Matrix covariance_matrix(const SimConfig& config, int group);

// delta * u/||u|| with u = (1, 2, ..., p)
Vector mean_shift(std::size_t p, double delta);

double draw_innovation(Rng& rng, Innovation model);

// One replication's data: group means 0 and mean_shift(p, delta), rows
// filled group 1 first, row-major, from RNG substream rep_index.
TwoSampleData generate_two_samples(const SimConfig& config, std::uint64_t rep_index);
TwoSampleData generate_two_samples(const SimConfig& config, const CovarianceSqrt& root1,
                                   const CovarianceSqrt& root2, const Vector& shift,
                                   std::uint64_t rep_index);

struct CellResult {
  SimConfig config;
  // indexed by Method: TCQ, TNP, FNP
  std::array<std::size_t, 3> n_reject{};
  std::array<std::size_t, 3> n_valid{};
  double mean_d1_hat = std::numeric_limits<double>::quiet_NaN();
  double mean_d2_hat = std::numeric_limits<double>::quiet_NaN();
  std::size_t n_failed_reps = 0;  // replications with at least one failed method

  double rejection_rate(Method m) const {
    const auto i = static_cast<std::size_t>(m);
    return n_valid[i] ? static_cast<double>(n_reject[i]) / static_cast<double>(n_valid[i])
                      : std::numeric_limits<double>::quiet_NaN();
  }
};

// Runs config.n_reps independent replications (parallelized; results are
// identical to a serial run because each replication owns substream
// rep_index of config.seed).
CellResult run_cell(const SimConfig& config);

// 100/M * sum |size_j - alpha| / alpha
double are_metric(const std::vector<double>& sizes, double alpha);

// Asymptotic power under the normal limit:
//   Phi(-z_alpha + (n1 n2 / n) delta^2 / sqrt(2 tr(Omega_n^2))).
double theoretical_power_normal(double delta, const Matrix& sigma1, const Matrix& sigma2,
                                std::size_t n1, std::size_t n2, double alpha);

// Mixture-limit variant evaluated by Monte Carlo over the centered
// chi-square mixture truncated at p terms.
double theoretical_power_mixture(double delta, const Matrix& sigma1, const Matrix& sigma2,
                                 std::size_t n1, std::size_t n2, double alpha,
                                 std::size_t n_draws, std::uint64_t seed);

}  // namespace hdbf
