#pragma once

#include <cstddef>

#include "hdbf/matrix.hpp"

namespace hdbf {

// Two dense samples; rows are observations, columns the p variables.
struct TwoSampleData {
  Matrix x1;
  Matrix x2;
  std::size_t n1() const { return x1.rows(); }
  std::size_t n2() const { return x2.rows(); }
  std::size_t p() const { return x1.cols(); }
};

// Throws std::invalid_argument unless n1 >= 3, n2 >= 3, a shared p >= 1,
// and every entry finite.
void validate(const TwoSampleData& data);

struct CenteredData {
  Vector mean1;
  Vector mean2;
  Matrix xc1;
  Matrix xc2;
};
CenteredData center_and_means(const TwoSampleData& data);

// All covariance trace functionals consumed by the test statistics. The
// data-side quantities go through n x n Gram matrices (O(n^2 p) time,
// O(n^2 + np) memory); no p x p matrix is ever formed.
struct TraceSummary {
  std::size_t n1 = 0, n2 = 0, p = 0;
  double tr_s1 = 0, tr_s2 = 0;          // tr(S_i), S_i the sample covariances
  double tr_s1sq = 0, tr_s2sq = 0;      // tr(S_i^2)
  double tr_cross = 0;                  // tr(S_1 S_2)
  double u_tr2_s1 = 0, u_tr2_s2 = 0;    // unbiased estimates of tr^2(Sigma_i)
  double u_trsq_s1 = 0, u_trsq_s2 = 0;  // unbiased estimates of tr(Sigma_i^2)
  double tr_omega = 0;                  // tr of the plug-in Omega_n estimate
  double u_tr2_omega = 0;               // estimate of tr^2(Omega_n)
  double u_trsq_omega = 0;              // estimate of tr(Omega_n^2)
};

TraceSummary trace_summary(const TwoSampleData& data);
// Same, reusing centered matrices already at hand.
TraceSummary trace_summary(const CenteredData& cd);

// ||ybar_1 - ybar_2||^2
double mean_diff_sq(const TwoSampleData& data);

// Population analogues from explicit covariance matrices (desk-scale p
// only; these do form p x p products).
struct PopulationTraces {
  double tr_s1 = 0, tr_s2 = 0;
  double tr_s1sq = 0, tr_s2sq = 0;
  double tr_s1cu = 0, tr_s2cu = 0;
  double tr_cross = 0;
  double tr_omega = 0, tr_omega_sq = 0, tr_omega_cu = 0;
};
PopulationTraces trace_functionals_population(const Matrix& sigma1, const Matrix& sigma2,
                                              std::size_t n1, std::size_t n2);

}  // namespace hdbf
