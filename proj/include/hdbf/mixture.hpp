#pragma once

#include <cstdint>
#include <functional>

#include "hdbf/matrix.hpp"

namespace hdbf {

// Eigenvalue spectra that define the Gaussian null mixtures: lambda_omega
// for the numerator chi-square-type mixture, lambda1/lambda2 for the two
// covariances entering the denominator. All descending and nonnegative.
struct MixtureSpec {
  Vector lambda_omega;
  Vector lambda1;
  Vector lambda2;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

void validate(const MixtureSpec& spec);

// Builds the spec from explicit covariance matrices; eigenvalues in
// [-1e-10*scale, 0) from the decomposition are clipped to 0.
MixtureSpec mixture_spec_from_covariances(const Matrix& sigma1, const Matrix& sigma2,
                                          std::size_t n1, std::size_t n2);

struct Cumulants {
  double k1 = 0, k2 = 0, k3 = 0;
};

// First three cumulants of the numerator mixture sum(lambda_r A_r).
Cumulants cumulants_t_star(const MixtureSpec& spec);
// First three cumulants of the denominator mixture.
Cumulants cumulants_s_star(const MixtureSpec& spec);

// Leading-order cumulants of the ratio, plus the skewness quantities.
struct FStarCumulants {
  double k1 = 0, k2 = 0, k3 = 0;
  double d_star = 0;    // tr^3(Omega^2)/tr^2(Omega^3) in spectrum form
  double skewness = 0;  // sqrt(8/d_star)
};
FStarCumulants cumulants_f_star(const MixtureSpec& spec);

// Population approximation parameters matched on the first two cumulants.
struct ApproxParams {
  double beta1 = 0, d1 = 0;
  double beta2 = 0, d2 = 0;
};
ApproxParams population_approx(const MixtureSpec& spec);

// Draws of the ratio mixture. Deterministic given seed; draw i uses RNG
// substream i, so the vector is identical however many threads run.
Vector sample_f_star(const MixtureSpec& spec, std::size_t n_draws, std::uint64_t seed);

// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.
double ks_distance(Vector sample, const std::function<double(double)>& cdf);

// KS distance between the empirical ratio mixture and the F distribution
// at the population (d1, d2).
double approximation_quality(const MixtureSpec& spec, std::size_t n_draws,
                             std::uint64_t seed);

}  // namespace hdbf
