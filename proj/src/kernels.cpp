#include "hdbf/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace hdbf::kernels {

double dot(const double* a, const double* b, std::size_t m) {
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) s += a[k] * b[k];
  return s;
}

namespace {

void check_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

void check_cross(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("cross_gram: column counts differ");
}

}  // namespace

namespace serial {

Matrix gram(const Matrix& x) {
  const std::size_t n = x.rows(), p = x.cols();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const double v = dot(xi, x.row(j), p);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Matrix cross_gram(const Matrix& a, const Matrix& b) {
  check_cross(a, b);
  const std::size_t n = a.rows(), m = b.rows(), p = a.cols();
  Matrix c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < m; ++j) c(i, j) = dot(ai, b.row(j), p);
  }
  return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix c(n, m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = ai[l];
      const double* bl = b.row(l);
      for (std::size_t j = 0; j < m; ++j) ci[j] += ail * bl[j];
    }
  }
  return c;
}

double frobenius_sq(const Matrix& x) {
  const std::size_t n = x.rows(), p = x.cols();
  Vector row_sq(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) row_sq[i] = dot(x.row(i), x.row(i), p);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += row_sq[i];
  return s;
}

}  // namespace serial

Matrix gram(const Matrix& x) {
  const std::size_t n = x.rows(), p = x.cols();
  Matrix g(n, n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const double v = dot(xi, x.row(j), p);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

Matrix cross_gram(const Matrix& a, const Matrix& b) {
  check_cross(a, b);
  const std::size_t n = a.rows(), m = b.rows(), p = a.cols();
  Matrix c(n, m);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < m; ++j) c(i, j) = dot(ai, b.row(j), p);
  }
  return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix c(n, m, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = ai[l];
      const double* bl = b.row(l);
      for (std::size_t j = 0; j < m; ++j) ci[j] += ail * bl[j];
    }
  }
  return c;
}

double frobenius_sq(const Matrix& x) {
  const std::size_t n = x.rows(), p = x.cols();
  Vector row_sq(n, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) row_sq[i] = dot(x.row(i), x.row(i), p);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += row_sq[i];
  return s;
}

double trace(const Matrix& a) {
  check_square(a, "trace");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

double trace_product(const Matrix& a, const Matrix& b) {
  check_square(a, "trace_product");
  check_square(b, "trace_product");
  if (a.rows() != b.rows()) throw std::invalid_argument("trace_product: sizes differ");
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * b(j, i);
  return s;
}

SymEig sym_eig(const Matrix& a) {
  check_square(a, "sym_eig");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  SymEig out;
  out.vectors = a;
  out.values.assign(a.rows(), 0.0);
  const lapack_int info = LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'V', 'U', n,
                                        out.vectors.data(), n, out.values.data());
  if (info != 0)
    throw std::runtime_error("sym_eig: dsyev failed with info=" + std::to_string(info));
  return out;
}

Matrix sym_sqrt_psd(const Matrix& a, double clip_tol) {
  SymEig eig = sym_eig(a);
  const std::size_t n = a.rows();
  // scale the tolerance by the largest eigenvalue magnitude
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::fabs(v));
  const double floor = -clip_tol * std::max(1.0, scale);
  Matrix vs(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = eig.values[j];
    if (v < floor)
      throw std::invalid_argument("sym_sqrt_psd: matrix is not positive semi-definite");
    if (v < 0.0) v = 0.0;
    const double s = std::sqrt(v);
    for (std::size_t i = 0; i < n; ++i) vs(i, j) = eig.vectors(i, j) * s;
  }
  // vs = V diag(sqrt(l)); result = vs V^T
  Matrix vt(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) vt(i, j) = eig.vectors(j, i);
  return matmul(vs, vt);
}

}  // namespace hdbf::kernels
