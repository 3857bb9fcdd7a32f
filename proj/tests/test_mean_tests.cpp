#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hdbf/mean_tests.hpp"
#include "hdbf/simulation.hpp"
#include "oracles.hpp"

using hdbf::Matrix;
using hdbf::Method;
using hdbf::TestReport;
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

// the 5-observation toy sample: group sizes 2 and 3
TwoSampleData toy_data() {
  TwoSampleData d;
  d.x1 = from_rows({{1, 0}, {0, 1}});
  d.x2 = from_rows({{2, 1}, {1, 2}, {0, 0}});
  return d;
}

}  // namespace

TEST_CASE("toy data: statistic formulas evaluate by hand") {
  const TwoSampleData d = toy_data();
  // means (0.5, 0.5) and (1, 1)
  CHECK(hdbf::mean_diff_sq(d) == doctest::Approx(0.5).epsilon(1e-14));
  // raw numerator statistic (n1 n2 / n) ||diff||^2 = 1.2 * 0.5
  CHECK(2.0 * 3.0 / 5.0 * hdbf::mean_diff_sq(d) == doctest::Approx(0.6).epsilon(1e-14));
  // fast Chen-Qin form: ||diff||^2 - tr(S1)/n1 - tr(S2)/n2 = 0.5 - 1/2 - 2/3
  const double tr_s1 = 1.0;  // centered rows (0.5,-0.5),(-0.5,0.5)
  const double tr_s2 = 2.0;  // centered rows (1,0),(0,1),(-1,-1), Frobenius^2 = 4
  const double fast = hdbf::mean_diff_sq(d) - tr_s1 / 2.0 - tr_s2 / 3.0;
  CHECK(fast == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
  CHECK_NEAR(oracle::t_cq_brute_force(d), fast, 1e-12);
}

TEST_CASE("fast Chen-Qin form equals the pairwise U-statistic on random data") {
  hdbf::Rng mix(2024);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n1 = 3 + (mix() % 4), n2 = 3 + (mix() % 4), p = 1 + (mix() % 5);
    const TwoSampleData d = gaussian_pair(n1, n2, p, 5000 + k);
    const TraceSummary ts = hdbf::trace_summary(d);
    const TestReport rep = hdbf::t_cq(d, ts);
    const double brute = oracle::t_cq_brute_force(d);
    CHECK_NEAR(rep.statistic, brute, 1e-12 * std::max(1.0, std::fabs(brute)));
  }
}

TEST_CASE("estimate_df: product identity and group-swap invariance") {
  for (int k = 0; k < 20; ++k) {
    const TwoSampleData d = gaussian_pair(6 + k % 3, 8, 12, 900 + k);
    const TraceSummary ts = hdbf::trace_summary(d);
    const auto est = hdbf::estimate_df(ts);
    CHECK(est.beta1_hat * est.d1_hat ==
          doctest::Approx(est.beta2_hat * est.d2_hat).epsilon(1e-12));
    CHECK(est.beta1_hat * est.d1_hat ==
          doctest::Approx(ts.u_tr2_omega / ts.tr_omega).epsilon(1e-12));
    CHECK(est.d1_hat > 0.0);
    CHECK(est.d2_hat > 0.0);

    const TwoSampleData swapped{d.x2, d.x1};
    const auto est2 = hdbf::estimate_df(hdbf::trace_summary(swapped));
    CHECK(est2.d1_hat == doctest::Approx(est.d1_hat).epsilon(1e-10));
    CHECK(est2.d2_hat == doctest::Approx(est.d2_hat).epsilon(1e-10));
  }
}

TEST_CASE("zero mean difference: zero statistic, p-value 1") {
  TwoSampleData d;
  d.x1 = from_rows({{1, 0}, {0, 1}, {-1, -1}, {0.5, -0.2}, {-0.5, 0.2}});
  d.x2 = from_rows({{2, 1}, {-2, -1}, {1, -1}, {-1, 1}, {0, 0}});
  // both group means are exactly (0, 0)
  const TraceSummary ts = hdbf::trace_summary(d);
  const TestReport rep = hdbf::t_np(d, ts);
  CHECK_NEAR(rep.statistic, 0.0, 1e-14);
  CHECK(rep.p_value == doctest::Approx(1.0));
}

TEST_CASE("group swap leaves every statistic unchanged") {
  const TwoSampleData d = gaussian_pair(7, 9, 20, 77);
  const TwoSampleData s{d.x2, d.x1};
  const auto a = hdbf::run_all(d, 0.05);
  const auto b = hdbf::run_all(s, 0.05);
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    REQUIRE(a.outcomes[i].report.has_value());
    REQUIRE(b.outcomes[i].report.has_value());
    const TestReport& ra = *a.outcomes[i].report;
    const TestReport& rb = *b.outcomes[i].report;
    CHECK(ra.statistic == doctest::Approx(rb.statistic).epsilon(1e-10));
    CHECK(ra.p_value == doctest::Approx(rb.p_value).epsilon(1e-10));
    CHECK(ra.standardized == doctest::Approx(rb.standardized).epsilon(1e-10));
  }
}

TEST_CASE("location invariance: common shift changes nothing") {
  const TwoSampleData d = gaussian_pair(6, 7, 15, 88);
  TwoSampleData shifted = d;
  hdbf::Rng rng(89);
  hdbf::Vector shift(15);
  for (auto& v : shift) v = 10.0 * rng.normal();
  for (Matrix* m : {&shifted.x1, &shifted.x2})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j) (*m)(i, j) += shift[j];
  const auto a = hdbf::run_all(d, 0.05);
  const auto b = hdbf::run_all(shifted, 0.05);
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    const TestReport& ra = *a.outcomes[i].report;
    const TestReport& rb = *b.outcomes[i].report;
    CHECK(ra.statistic == doctest::Approx(rb.statistic).epsilon(1e-8));
    CHECK(ra.p_value == doctest::Approx(rb.p_value).epsilon(1e-8));
  }
}

TEST_CASE("scaling: quadratic statistics scale, the ratio does not") {
  const TwoSampleData d = gaussian_pair(6, 8, 10, 99);
  const double c = 7.0;
  TwoSampleData scaled = d;
  for (Matrix* m : {&scaled.x1, &scaled.x2})
    for (std::size_t k = 0; k < m->size(); ++k) m->data()[k] *= c;
  const TraceSummary ts = hdbf::trace_summary(d);
  const TraceSummary ts_c = hdbf::trace_summary(scaled);

  const TestReport f = hdbf::f_np(d, ts);
  const TestReport f_c = hdbf::f_np(scaled, ts_c);
  CHECK(f_c.statistic == doctest::Approx(f.statistic).epsilon(1e-10));
  CHECK(f_c.p_value == doctest::Approx(f.p_value).epsilon(1e-10));

  const TestReport t = hdbf::t_np(d, ts);
  const TestReport t_c = hdbf::t_np(scaled, ts_c);
  CHECK(t_c.statistic == doctest::Approx(c * c * t.statistic).epsilon(1e-10));
  CHECK(ts_c.tr_omega == doctest::Approx(c * c * ts.tr_omega).epsilon(1e-10));

  const TestReport q = hdbf::t_cq(d, ts);
  const TestReport q_c = hdbf::t_cq(scaled, ts_c);
  CHECK(q_c.statistic == doctest::Approx(c * c * q.statistic).epsilon(1e-10));
}

TEST_CASE("degenerate data fails loudly, other methods still reported") {
  TwoSampleData d;
  d.x1 = Matrix(4, 3, 1.0);  // identical constant vectors
  d.x2 = Matrix(5, 3, 1.0);
  const TraceSummary ts = hdbf::trace_summary(d);
  CHECK_THROWS_AS(hdbf::t_cq(d, ts), hdbf::DegenerateStatistic);
  CHECK_THROWS_AS(hdbf::estimate_df(ts), hdbf::DegenerateStatistic);
  CHECK_THROWS_AS(hdbf::f_np(d, ts), hdbf::DegenerateStatistic);
  try {
    hdbf::estimate_df(ts);
  } catch (const hdbf::DegenerateStatistic& e) {
    CHECK(std::string(e.what()).find("tr_s1") != std::string::npos);
  }
  const auto all = hdbf::run_all(d, 0.05);
  CHECK(all.outcomes.size() == 3);
  for (const auto& o : all.outcomes) {
    CHECK(!o.report.has_value());
    CHECK(!o.error.empty());
  }
  CHECK(all.any_failure());
  CHECK(!all.any_rejection());
}

TEST_CASE("run_all: sane p-values on null data and full determinism") {
  const TwoSampleData d = gaussian_pair(30, 50, 50, 123);
  const auto a = hdbf::run_all(d, 0.05);
  for (const auto& o : a.outcomes) {
    REQUIRE(o.report.has_value());
    CHECK(o.report->p_value > 0.0);
    CHECK(o.report->p_value < 1.0);
  }
  const auto b = hdbf::run_all(d, 0.05);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.outcomes[i].report->statistic == b.outcomes[i].report->statistic);
    CHECK(a.outcomes[i].report->p_value == b.outcomes[i].report->p_value);
  }
  CHECK_THROWS_AS(hdbf::run_all(d, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hdbf::run_all(d, 1.0), std::invalid_argument);
}

TEST_CASE("null calibration: F-ratio test holds its size on Gaussian scale mix") {
  // Sigma_1 = I_50, Sigma_2 = 2 I_50, n = (30, 50)
  hdbf::SimConfig cfg;
  cfg.model = hdbf::Innovation::Normal;
  cfg.cov_family = hdbf::CovFamily::CompoundSymmetry;
  cfg.p = 50;
  cfg.n1 = 30;
  cfg.n2 = 50;
  cfg.rho1 = 0.0;
  cfg.rho2 = 0.0;
  cfg.sigma1_sq = 1.0;
  cfg.sigma2_sq = 2.0;
  cfg.delta = 0.0;
  cfg.n_reps = 2000;
  cfg.alpha = 0.05;
  cfg.seed = 4242;
  const auto cell = hdbf::run_cell(cfg);
  CHECK(cell.n_failed_reps == 0);
  const double size = cell.rejection_rate(Method::FNP);
  CHECK(size >= 0.04);
  CHECK(size <= 0.07);
}
