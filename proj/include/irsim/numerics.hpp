#pragma once

#include <complex>

#include <Eigen/Dense>

#include "irsim/errors.hpp"

namespace irsim {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Relative pivot threshold below which a least-squares system is treated as
// rank-deficient. Fixed so singular-system errors are reproducible.
inline constexpr double kRankTolerance = 1e-10;

/// Unitary n x n DFT matrix, W(k,l) = exp(-j 2 pi k l / n) / sqrt(n).
ComplexMatrix dft_matrix(Eigen::Index n);

/// Leading k columns of m.
ComplexMatrix first_columns(const ComplexMatrix& m, Eigen::Index k);

/// Full linear convolution, length len(a) + len(b) - 1. Direct evaluation;
/// kernels here never exceed a few taps.
ComplexVector linear_convolve(const ComplexVector& a, const ComplexVector& b);

/// Cyclic shift downward by k steps: w(i) = v((i - k) mod len). Any integer
/// k is reduced modulo the length.
ComplexVector cyclic_shift(const ComplexVector& v, Eigen::Index k);

/// Least-squares solution X of A X = B for tall full-column-rank A,
/// X = (A^H A)^-1 A^H B. Throws SingularSystemError when a pivot falls
/// below kRankTolerance times the dominant one.
ComplexMatrix ls_solve(const ComplexMatrix& A, const ComplexMatrix& B);

/// Least-squares solution X of X A = B for wide full-row-rank A,
/// X = B A^H (A A^H)^-1.
ComplexMatrix right_ls_solve(const ComplexMatrix& B, const ComplexMatrix& A);

/// tr(G^-1) for a Hermitian positive-definite Gram matrix G, with the same
/// rank guard as ls_solve.
double trace_inverse(const ComplexMatrix& G);

}  // namespace irsim
