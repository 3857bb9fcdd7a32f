#include "hdbf/traces.hpp"

#include <cmath>
#include <stdexcept>

#include "hdbf/kernels.hpp"

namespace hdbf {

void validate(const TwoSampleData& data) {
  if (data.n1() < 3 || data.n2() < 3)
    throw std::invalid_argument("two-sample data: each group needs at least 3 observations");
  if (data.x1.cols() != data.x2.cols())
    throw std::invalid_argument("two-sample data: groups have different dimensions");
  if (data.p() < 1) throw std::invalid_argument("two-sample data: dimension must be >= 1");
  for (const Matrix* m : {&data.x1, &data.x2}) {
    const double* ptr = m->data();
    for (std::size_t k = 0; k < m->size(); ++k)
      if (!std::isfinite(ptr[k]))
        throw std::invalid_argument("two-sample data: non-finite entry");
  }
}

namespace {

Vector column_means(const Matrix& x) {
  const std::size_t n = x.rows(), p = x.cols();
  Vector mean(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.row(i);
    for (std::size_t j = 0; j < p; ++j) mean[j] += xi[j];
  }
  for (std::size_t j = 0; j < p; ++j) mean[j] /= static_cast<double>(n);
  return mean;
}

Matrix center(const Matrix& x, const Vector& mean) {
  Matrix xc(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* xi = x.row(i);
    double* ci = xc.row(i);
    for (std::size_t j = 0; j < x.cols(); ++j) ci[j] = xi[j] - mean[j];
  }
  return xc;
}

// unbiased estimates of tr^2(Sigma) and tr(Sigma^2) from tr(S), tr(S^2)
void unbiased_pair(double tr_s, double tr_ssq, std::size_t n_sz, double& u_tr2,
                   double& u_trsq) {
  const double n = static_cast<double>(n_sz);
  const double denom = (n - 2.0) * (n + 1.0);
  u_tr2 = (n - 1.0) * n / denom * (tr_s * tr_s - 2.0 / n * tr_ssq);
  u_trsq = (n - 1.0) * (n - 1.0) / denom * (tr_ssq - tr_s * tr_s / (n - 1.0));
}

}  // namespace

CenteredData center_and_means(const TwoSampleData& data) {
  validate(data);
  CenteredData cd;
  cd.mean1 = column_means(data.x1);
  cd.mean2 = column_means(data.x2);
  cd.xc1 = center(data.x1, cd.mean1);
  cd.xc2 = center(data.x2, cd.mean2);
  return cd;
}

TraceSummary trace_summary(const CenteredData& cd) {
  const std::size_t n1 = cd.xc1.rows(), n2 = cd.xc2.rows();
  if (n1 < 3 || n2 < 3)
    throw std::invalid_argument("trace_summary: estimators need at least 3 observations per group");
  TraceSummary ts;
  ts.n1 = n1;
  ts.n2 = n2;
  ts.p = cd.xc1.cols();
  const double f1 = static_cast<double>(n1) - 1.0;
  const double f2 = static_cast<double>(n2) - 1.0;

  ts.tr_s1 = kernels::frobenius_sq(cd.xc1) / f1;
  ts.tr_s2 = kernels::frobenius_sq(cd.xc2) / f2;

  const Matrix g1 = kernels::gram(cd.xc1);
  const Matrix g2 = kernels::gram(cd.xc2);
  const Matrix cross = kernels::cross_gram(cd.xc1, cd.xc2);
  ts.tr_s1sq = kernels::frobenius_sq(g1) / (f1 * f1);
  ts.tr_s2sq = kernels::frobenius_sq(g2) / (f2 * f2);
  ts.tr_cross = kernels::frobenius_sq(cross) / (f1 * f2);

  unbiased_pair(ts.tr_s1, ts.tr_s1sq, n1, ts.u_tr2_s1, ts.u_trsq_s1);
  unbiased_pair(ts.tr_s2, ts.tr_s2sq, n2, ts.u_tr2_s2, ts.u_trsq_s2);

  const double n = static_cast<double>(n1 + n2);
  const double w1 = static_cast<double>(n2) / n;  // weight on group 1
  const double w2 = static_cast<double>(n1) / n;  // weight on group 2
  ts.tr_omega = w1 * ts.tr_s1 + w2 * ts.tr_s2;
  ts.u_tr2_omega =
      w1 * w1 * ts.u_tr2_s1 + 2.0 * w1 * w2 * ts.tr_s1 * ts.tr_s2 + w2 * w2 * ts.u_tr2_s2;
  ts.u_trsq_omega =
      w1 * w1 * ts.u_trsq_s1 + 2.0 * w1 * w2 * ts.tr_cross + w2 * w2 * ts.u_trsq_s2;
  return ts;
}

TraceSummary trace_summary(const TwoSampleData& data) {
  return trace_summary(center_and_means(data));
}

double mean_diff_sq(const TwoSampleData& data) {
  const Vector m1 = column_means(data.x1);
  const Vector m2 = column_means(data.x2);
  double s = 0.0;
  for (std::size_t j = 0; j < m1.size(); ++j) {
    const double d = m1[j] - m2[j];
    s += d * d;
  }
  return s;
}

PopulationTraces trace_functionals_population(const Matrix& sigma1, const Matrix& sigma2,
                                              std::size_t n1, std::size_t n2) {
  if (sigma1.rows() != sigma1.cols() || sigma2.rows() != sigma2.cols() ||
      sigma1.rows() != sigma2.rows())
    throw std::invalid_argument("trace_functionals_population: dimension mismatch");
  const double n = static_cast<double>(n1 + n2);
  const double w1 = static_cast<double>(n2) / n;
  const double w2 = static_cast<double>(n1) / n;
  const std::size_t p = sigma1.rows();

  Matrix omega(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      omega(i, j) = w1 * sigma1(i, j) + w2 * sigma2(i, j);

  PopulationTraces out;
  out.tr_s1 = kernels::trace(sigma1);
  out.tr_s2 = kernels::trace(sigma2);
  out.tr_s1sq = kernels::frobenius_sq(sigma1);
  out.tr_s2sq = kernels::frobenius_sq(sigma2);
  out.tr_cross = kernels::trace_product(sigma1, sigma2);
  const Matrix s1sq = kernels::matmul(sigma1, sigma1);
  const Matrix s2sq = kernels::matmul(sigma2, sigma2);
  out.tr_s1cu = kernels::trace_product(s1sq, sigma1);
  out.tr_s2cu = kernels::trace_product(s2sq, sigma2);
  out.tr_omega = kernels::trace(omega);
  out.tr_omega_sq = kernels::frobenius_sq(omega);
  const Matrix omega_sq = kernels::matmul(omega, omega);
  out.tr_omega_cu = kernels::trace_product(omega_sq, omega);
  return out;
}

}  // namespace hdbf
