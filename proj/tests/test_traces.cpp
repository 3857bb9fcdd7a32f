#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hdbf/kernels.hpp"
#include "hdbf/rng.hpp"
#include "hdbf/traces.hpp"
#include "oracles.hpp"

using hdbf::Matrix;
using hdbf::TraceSummary;
using hdbf::TwoSampleData;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

TwoSampleData gaussian_pair(std::size_t n1, std::size_t n2, std::size_t p,
                          std::uint64_t seed) {
  return {oracle::random_matrix(n1, p, seed), oracle::random_matrix(n2, p, seed + 1)};
}

}  // namespace

TEST_CASE("center_and_means: hand example and constant column") {
  TwoSampleData d;
  d.x1 = from_rows({{1, 0}, {0, 1}, {0.5, 0.5}});
  d.x2 = from_rows({{7, 3}, {7, 4}, {7, 5}});
  const auto cd = hdbf::center_and_means(d);
  CHECK(cd.mean1[0] == doctest::Approx(0.5));
  CHECK(cd.mean1[1] == doctest::Approx(0.5));
  CHECK(cd.xc1(0, 0) == doctest::Approx(0.5));
  CHECK(cd.xc1(0, 1) == doctest::Approx(-0.5));
  CHECK(cd.xc1(1, 0) == doctest::Approx(-0.5));
  CHECK(cd.xc1(1, 1) == doctest::Approx(0.5));
  // constant column centers to exactly zero
  for (std::size_t i = 0; i < 3; ++i) CHECK(cd.xc2(i, 0) == 0.0);
}

TEST_CASE("center_and_means: column sums vanish on random data") {
  const auto d = gaussian_pair(5, 7, 3, 11);
  const auto cd = hdbf::center_and_means(d);
  for (const Matrix* xc : {&cd.xc1, &cd.xc2})
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < xc->rows(); ++i) s += (*xc)(i, j);
      CHECK_NEAR(s, 0.0, 1e-12);
    }
}

TEST_CASE("validation rejects bad data") {
  TwoSampleData d = gaussian_pair(3, 3, 2, 1);
  TwoSampleData small = d;
  small.x1 = oracle::random_matrix(2, 2, 2);
  CHECK_THROWS_AS(hdbf::validate(small), std::invalid_argument);
  TwoSampleData mism = d;
  mism.x2 = oracle::random_matrix(3, 5, 3);
  CHECK_THROWS_AS(hdbf::validate(mism), std::invalid_argument);
  TwoSampleData inf = d;
  inf.x1(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(hdbf::validate(inf), std::invalid_argument);
  TwoSampleData nan = d;
  nan.x2(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(hdbf::validate(nan), std::invalid_argument);
}

TEST_CASE("trace_summary: engineered identity covariance, n=3") {
  // centered rows (2/sqrt(3),0), (-1/sqrt(3),1), (-1/sqrt(3),-1) give S = I_2
  const double s = 2.0 / std::sqrt(3.0);
  TwoSampleData d;
  d.x1 = from_rows({{s + 5, 0 + 7}, {-s / 2 + 5, 1 + 7}, {-s / 2 + 5, -1 + 7}});
  d.x2 = from_rows({{1, 0}, {0, 1}, {1, 1}});
  const TraceSummary ts = hdbf::trace_summary(d);
  CHECK(ts.tr_s1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ts.tr_s1sq == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_NEAR(ts.u_trsq_s1, 0.0, 1e-12);
  CHECK(ts.u_tr2_s1 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("trace_summary: identical groups share the cross trace") {
  const Matrix x = oracle::random_matrix(6, 9, 21);
  TwoSampleData d{x, x};
  const TraceSummary ts = hdbf::trace_summary(d);
  CHECK(ts.tr_cross == ts.tr_s1sq);
  CHECK(ts.tr_cross == ts.tr_s2sq);
}

TEST_CASE("Gram path equals explicit covariance formation") {
  for (auto [n1, n2, p] : {std::tuple<std::size_t, std::size_t, std::size_t>{8, 10, 60},
                           {30, 25, 200},
                           {12, 9, 3}}) {
    const auto d = gaussian_pair(n1, n2, p, 100 + p);
    const TraceSummary ts = hdbf::trace_summary(d);
    const Matrix s1 = oracle::sample_covariance(d.x1);
    const Matrix s2 = oracle::sample_covariance(d.x2);
    const Matrix s1s1 = oracle::matmul_naive(s1, s1);
    const Matrix s2s2 = oracle::matmul_naive(s2, s2);
    const Matrix s1s2 = oracle::matmul_naive(s1, s2);
    CHECK(ts.tr_s1 == doctest::Approx(hdbf::kernels::trace(s1)).epsilon(1e-10));
    CHECK(ts.tr_s2 == doctest::Approx(hdbf::kernels::trace(s2)).epsilon(1e-10));
    CHECK(ts.tr_s1sq == doctest::Approx(hdbf::kernels::trace(s1s1)).epsilon(1e-10));
    CHECK(ts.tr_s2sq == doctest::Approx(hdbf::kernels::trace(s2s2)).epsilon(1e-10));
    CHECK(ts.tr_cross == doctest::Approx(hdbf::kernels::trace(s1s2)).epsilon(1e-10));
  }
}

TEST_CASE("orthogonal invariance of the trace summary") {
  const std::size_t p = 12;
  const auto d = gaussian_pair(5, 6, p, 31);
  const Matrix q = oracle::random_orthogonal(p, 32);
  TwoSampleData rot;
  rot.x1 = hdbf::kernels::matmul(d.x1, q);
  rot.x2 = hdbf::kernels::matmul(d.x2, q);
  const TraceSummary a = hdbf::trace_summary(d);
  const TraceSummary b = hdbf::trace_summary(rot);
  const auto close = [](double x, double y) {
    CHECK(x == doctest::Approx(y).epsilon(1e-8));
  };
  close(a.tr_s1, b.tr_s1);
  close(a.tr_s2, b.tr_s2);
  close(a.tr_s1sq, b.tr_s1sq);
  close(a.tr_s2sq, b.tr_s2sq);
  close(a.tr_cross, b.tr_cross);
  close(a.u_tr2_s1, b.u_tr2_s1);
  close(a.u_tr2_s2, b.u_tr2_s2);
  close(a.u_trsq_s1, b.u_trsq_s1);
  close(a.u_trsq_s2, b.u_trsq_s2);
  close(a.tr_omega, b.tr_omega);
  close(a.u_tr2_omega, b.u_tr2_omega);
  close(a.u_trsq_omega, b.u_trsq_omega);
}

TEST_CASE("scale equivariance: c^2 on traces, c^4 on squared functionals") {
  const auto d = gaussian_pair(6, 8, 10, 41);
  const double c = 3.0;
  TwoSampleData scaled = d;
  for (Matrix* m : {&scaled.x1, &scaled.x2})
    for (std::size_t k = 0; k < m->size(); ++k) m->data()[k] *= c;
  const TraceSummary a = hdbf::trace_summary(d);
  const TraceSummary b = hdbf::trace_summary(scaled);
  const double c2 = c * c, c4 = c2 * c2;
  CHECK(b.tr_s1 == doctest::Approx(c2 * a.tr_s1).epsilon(1e-12));
  CHECK(b.tr_s2 == doctest::Approx(c2 * a.tr_s2).epsilon(1e-12));
  CHECK(b.tr_omega == doctest::Approx(c2 * a.tr_omega).epsilon(1e-12));
  CHECK(b.tr_s1sq == doctest::Approx(c4 * a.tr_s1sq).epsilon(1e-12));
  CHECK(b.tr_s2sq == doctest::Approx(c4 * a.tr_s2sq).epsilon(1e-12));
  CHECK(b.tr_cross == doctest::Approx(c4 * a.tr_cross).epsilon(1e-12));
  CHECK(b.u_tr2_s1 == doctest::Approx(c4 * a.u_tr2_s1).epsilon(1e-12));
  CHECK(b.u_tr2_s2 == doctest::Approx(c4 * a.u_tr2_s2).epsilon(1e-12));
  CHECK(b.u_trsq_s1 == doctest::Approx(c4 * a.u_trsq_s1).epsilon(1e-12));
  CHECK(b.u_trsq_s2 == doctest::Approx(c4 * a.u_trsq_s2).epsilon(1e-12));
  CHECK(b.u_tr2_omega == doctest::Approx(c4 * a.u_tr2_omega).epsilon(1e-12));
  CHECK(b.u_trsq_omega == doctest::Approx(c4 * a.u_trsq_omega).epsilon(1e-12));
}

TEST_CASE("weighted trace identity and eigenvalue bound") {
  const auto d = gaussian_pair(7, 9, 15, 51);
  const TraceSummary ts = hdbf::trace_summary(d);
  const double n = 16.0;
  CHECK(ts.tr_omega ==
        doctest::Approx(9.0 / n * ts.tr_s1 + 7.0 / n * ts.tr_s2).epsilon(1e-12));
  // Cauchy-Schwarz on the nonzero eigenvalues (rank <= min(n_i - 1, p))
  CHECK(ts.tr_s1sq >= ts.tr_s1 * ts.tr_s1 / std::min<double>(6.0, 15.0) - 1e-10);
  CHECK(ts.tr_s2sq >= ts.tr_s2 * ts.tr_s2 / std::min<double>(8.0, 15.0) - 1e-10);
}

TEST_CASE("unbiasedness of the squared-trace estimator, Monte Carlo") {
  // Sigma = I_50: tr(Sigma^2) = 50
  const std::size_t reps = 1000, p = 50;
  std::vector<double> vals(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    hdbf::Rng rng(777, r);
    TwoSampleData d;
    d.x1 = Matrix(30, p);
    d.x2 = Matrix(50, p);
    for (Matrix* m : {&d.x1, &d.x2})
      for (std::size_t k = 0; k < m->size(); ++k) m->data()[k] = rng.normal();
    vals[r] = hdbf::trace_summary(d).u_trsq_s1;
  }
  const auto m = oracle::sample_moments(vals);
  const double se = std::sqrt(m.variance / reps);
  CHECK(std::fabs(m.mean - 50.0) < 3.0 * se);
}

TEST_CASE("population trace functionals") {
  SUBCASE("identity covariances") {
    const Matrix eye = Matrix::identity(8);
    const auto pt = hdbf::trace_functionals_population(eye, eye, 30, 50);
    CHECK(pt.tr_omega == doctest::Approx(8.0));
    CHECK(pt.tr_omega_sq == doctest::Approx(8.0));
    CHECK(pt.tr_omega_cu == doctest::Approx(8.0));
    CHECK(pt.tr_s1sq == doctest::Approx(8.0));
    CHECK(pt.tr_cross == doctest::Approx(8.0));
  }
  SUBCASE("compound symmetry eigenvalue oracle, sigma^2=2, rho=0.5, p=50") {
    const std::size_t p = 50;
    Matrix sigma(p, p, 2.0 * 0.5);
    for (std::size_t i = 0; i < p; ++i) sigma(i, i) = 2.0;
    const auto pt = hdbf::trace_functionals_population(sigma, sigma, 40, 40);
    // eigenvalues: sigma^2(1 - rho + p rho) once, sigma^2(1 - rho) with mult p-1
    CHECK(pt.tr_s1 == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(pt.tr_s1sq == doctest::Approx(51.0 * 51.0 + 49.0).epsilon(1e-12));
    // cross-checked against the explicit square
    const Matrix sq = oracle::matmul_naive(sigma, sigma);
    CHECK(pt.tr_s1sq == doctest::Approx(hdbf::kernels::trace(sq)).epsilon(1e-12));
  }
  SUBCASE("unequal scalar covariances") {
    const Matrix s1 = Matrix::identity(2);
    Matrix s2 = Matrix::identity(2);
    s2(0, 0) = s2(1, 1) = 2.0;
    const auto pt = hdbf::trace_functionals_population(s1, s2, 30, 50);
    CHECK(pt.tr_omega == doctest::Approx(2.75).epsilon(1e-14));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(
        hdbf::trace_functionals_population(Matrix::identity(2), Matrix::identity(3), 5, 5),
        std::invalid_argument);
  }
}

TEST_CASE("degenerate all-zero groups produce zero traces") {
  TwoSampleData d;
  d.x1 = Matrix(4, 3, 0.0);
  d.x2 = Matrix(5, 3, 0.0);
  const TraceSummary ts = hdbf::trace_summary(d);
  CHECK(ts.tr_s1 == 0.0);
  CHECK(ts.tr_omega == 0.0);
  CHECK(ts.u_trsq_omega == 0.0);
}
