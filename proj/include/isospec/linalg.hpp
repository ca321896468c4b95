#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "isospec/matrix.hpp"
#include "isospec/poly.hpp"

namespace isospec {

struct TridiagonalizeResult {
    TridiagonalMatrix t;
    Matrix q; // orthogonal accumulated transform, QᵀMQ = T
};

/// Householder reduction of a symmetric matrix to tridiagonal form with
/// accumulated orthogonal transform. An already-tridiagonal input passes
/// through unchanged with Q = I.
TridiagonalizeResult householder_tridiagonalize(const SymmetricMatrix& m);

/// Full symmetric eigensolve: Householder reduction followed by
/// implicit-shift QL sweeps on the tridiagonal (tred2/tql2 lineage).
/// Eigenvalues ascending; columns of Spectrum::vectors are eigenvectors.
/// Throws ConvergenceError after 50*n sweeps.
Spectrum symmetric_eigen(const SymmetricMatrix& m, bool with_vectors = true);

/// Eigensolve of the tridiagonal directly (same QL core).
Spectrum tridiagonal_eigen(const TridiagonalMatrix& t, bool with_vectors = true);

/// GUE path: real 2n x 2n embedding, eigenvalues deduplicated (each appears
/// twice in the embedding). No eigenvectors.
Spectrum hermitian_eigen(const HermitianMatrix& m);

struct QrFactors {
    Matrix q;
    Matrix r;
};

/// Householder QR of a square invertible matrix, normalized so R_ii > 0
/// (which makes the pair unique). Throws SingularMatrixError when some
/// |R_ii| < 1e-14 * ||M||_F.
QrFactors qr_factorize(const Matrix& m);

/// Scalar function applied to a symmetric matrix through its spectrum.
struct ScalarFunction {
    std::string name;
    std::function<double(double)> f;
    std::function<bool(double)> domain; // empty => all of R
};

ScalarFunction scalar_identity();
ScalarFunction scalar_exp();
ScalarFunction scalar_log();
/// Piecewise-linear interpolant of tabulated (x, g(x)) pairs; domain is
/// the tabulated x-range.
ScalarFunction scalar_tabulated(std::vector<double> x, std::vector<double> y);

/// V diag(g(λ)) Vᵀ, symmetrized exactly. Throws DomainError naming the
/// offending eigenvalue if g is undefined there.
SymmetricMatrix matrix_function(const SymmetricMatrix& m, const ScalarFunction& g);

struct CharpolyRoots {
    std::vector<std::complex<double>> roots;
    bool degenerate = false; // determinant polynomial identically zero
};

/// Characteristic polynomial det(M - z I) assembled by exact cofactor
/// expansion in z (supported for n <= 8).
Poly charpoly(const Matrix& m);

/// Closed-form-accuracy eigenvalue oracle for n <= 4 via the characteristic
/// polynomial; independent of the iterative eigensolver.
CharpolyRoots charpoly_roots_small(const Matrix& m, int max_n = 4);

} // namespace isospec
