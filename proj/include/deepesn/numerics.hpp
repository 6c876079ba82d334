#pragma once

#include "deepesn/matrix.hpp"

#include <cstddef>
#include <vector>

namespace deepesn {

struct IterativeOptions {
    double tol = 1e-6;            ///< relative accuracy target
    std::size_t max_iter = 10000; ///< iteration cap
};

/// Largest eigenvalue modulus of a square (generally non-symmetric) matrix.
///
/// The full real spectrum is computed by Hessenberg reduction followed by
/// Francis double-shift QR, so dominant complex-conjugate pairs and clustered
/// moduli (the usual situation for random reservoir matrices) are resolved to
/// working precision. `max_iter` caps the total number of QR sweeps; on
/// exhaustion a NonConvergenceError carries the largest modulus found so far.
/// `tol` is validated but the result is always accurate to rounding level.
double spectral_radius(const DenseMatrix& a, IterativeOptions opts = {});

/// All eigenvalues (real and imaginary parts) of a square matrix, unordered.
struct ComplexEigenvalues {
    std::vector<double> real;
    std::vector<double> imag;
};
ComplexEigenvalues general_eigenvalues(const DenseMatrix& a, std::size_t max_iter = 10000);

/// Largest singular value, by power iteration on the smaller Gram matrix.
/// Runs from the all-ones start and from the alternating +-1 start; the
/// larger Rayleigh quotient is returned (both are lower bounds of the true
/// value for a PSD Gram matrix).
double operator_norm_2(const DenseMatrix& a, IterativeOptions opts = {});

struct SymmetricEigen {
    std::vector<double> values; ///< non-increasing
    DenseMatrix vectors;        ///< column i pairs with values[i]
};

/// Cyclic Jacobi on (S + S^T) / 2. Sweeps until the largest off-diagonal
/// entry is below 1e-12 times the Frobenius norm (cap: 100 sweeps).
SymmetricEigen symmetric_eigen(const DenseMatrix& s);

/// Eigenvalues only; skips the rotation accumulation.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& s);

/// Singular values of X (rows <= cols) as square roots of the eigenvalues of
/// X X^T, negatives clamped to zero.
SingularSpectrum singular_values(const DenseMatrix& x);

/// W minimizing ||W X - Y||^2 + ridge ||W||^2, with X: n x T and Y: m x T.
/// At ridge = 0, Gram eigenvalues below 1e-12 * lambda_max are discarded
/// (pseudoinverse).
DenseMatrix least_squares_solve(const DenseMatrix& x, const DenseMatrix& y, double ridge = 0.0);

} // namespace deepesn
