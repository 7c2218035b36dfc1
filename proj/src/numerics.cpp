#include "irsim/numerics.hpp"

#include <cmath>
#include <numbers>

namespace irsim {

ComplexMatrix dft_matrix(Eigen::Index n) {
    if (n < 1)
        throw DimensionError("dft_matrix: size must be >= 1");
    ComplexMatrix w(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            // k*l reduced mod n keeps the phase argument small and exact.
            const auto kl = static_cast<long long>(k) * static_cast<long long>(l) % n;
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(kl) / static_cast<double>(n);
            w(k, l) = std::polar(scale, phase);
        }
    }
    return w;
}

ComplexMatrix first_columns(const ComplexMatrix& m, Eigen::Index k) {
    if (k < 1 || k > m.cols())
        throw DimensionError("first_columns: need 1 <= k <= cols");
    return m.leftCols(k);
}

ComplexVector linear_convolve(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() == 0 || b.size() == 0)
        throw DimensionError("linear_convolve: empty input");
    ComplexVector c = ComplexVector::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j)
            c(i + j) += a(i) * b(j);
    return c;
}

ComplexVector cyclic_shift(const ComplexVector& v, Eigen::Index k) {
    if (v.size() == 0)
        throw DimensionError("cyclic_shift: empty vector");
    const Eigen::Index n = v.size();
    ComplexVector w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index src = (i - k) % n;
        if (src < 0)
            src += n;
        w(i) = v(src);
    }
    return w;
}

ComplexMatrix ls_solve(const ComplexMatrix& A, const ComplexMatrix& B) {
    if (A.rows() < A.cols())
        throw DimensionError("ls_solve: system must have rows >= cols");
    if (A.rows() != B.rows())
        throw DimensionError("ls_solve: row count mismatch");
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(A);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < A.cols())
        throw SingularSystemError("ls_solve: rank-deficient system");
    return qr.solve(B);
}

ComplexMatrix right_ls_solve(const ComplexMatrix& B, const ComplexMatrix& A) {
    if (A.cols() < A.rows())
        throw DimensionError("right_ls_solve: system must have cols >= rows");
    if (A.cols() != B.cols())
        throw DimensionError("right_ls_solve: column count mismatch");
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(A.adjoint());
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < A.rows())
        throw SingularSystemError("right_ls_solve: rank-deficient system");
    return qr.solve(B.adjoint()).adjoint();
}

double trace_inverse(const ComplexMatrix& G) {
    if (G.rows() != G.cols())
        throw DimensionError("trace_inverse: matrix must be square");
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(G);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < G.cols())
        throw SingularSystemError("trace_inverse: singular matrix");
    const ComplexMatrix inv = qr.solve(ComplexMatrix::Identity(G.rows(), G.cols()));
    return inv.trace().real();
}

}  // namespace irsim
