#pragma once

#include <cstddef>

#include "hdbf/matrix.hpp"

namespace hdbf::kernels {

double dot(const double* a, const double* b, std::size_t m);

// Serial reference implementations, kept for testing the OpenMP kernels.
// The parallel versions below agree with these bit for bit: parallelism is
// over output entries only and the per-entry summation order is identical.
namespace serial {
Matrix gram(const Matrix& x);                         // x x^T, n x n
Matrix cross_gram(const Matrix& a, const Matrix& b);  // a b^T
Matrix matmul(const Matrix& a, const Matrix& b);      // a b
double frobenius_sq(const Matrix& x);
}  // namespace serial

Matrix gram(const Matrix& x);
Matrix cross_gram(const Matrix& a, const Matrix& b);
Matrix matmul(const Matrix& a, const Matrix& b);
double frobenius_sq(const Matrix& x);

double trace(const Matrix& a);
// tr(a b) for general square a, b of the same size.
double trace_product(const Matrix& a, const Matrix& b);

// Symmetric eigendecomposition (LAPACK dsyev). Eigenvalues come back
// ascending; column j of `vectors` is the eigenvector for values[j].
struct SymEig {
  Vector values;
  Matrix vectors;
};
SymEig sym_eig(const Matrix& a);

// Symmetric PSD square root V diag(sqrt(lambda)) V^T. Eigenvalues in
// [-clip_tol, 0) are treated as 0; anything below -clip_tol throws.
Matrix sym_sqrt_psd(const Matrix& a, double clip_tol = 1e-8);

}  // namespace hdbf::kernels
