#pragma once

#include <complex>
#include <vector>

#include "isospec/linalg.hpp"
#include "isospec/matrix.hpp"

namespace isospec {

/// Toda lattice phase-space point: positions x, momenta y.
struct FlaschkaState {
    std::vector<double> x;
    std::vector<double> y;
};

/// Flaschka map: a_k = -y_k/2, b_k = (1/2) exp((x_k - x_{k+1})/2).
/// All b_k are strictly positive. Throws DomainError if the exponential
/// would overflow.
TridiagonalMatrix flaschka(const FlaschkaState& state);

/// Inverse of the Flaschka map with the translation gauge sum(x) = 0.
/// Requires b_k > 0.
FlaschkaState inverse_flaschka(const TridiagonalMatrix& t);

/// B(M) = M_- - M_-ᵀ (strictly lower part minus its transpose); antisymmetric.
Matrix toda_b(const SymmetricMatrix& m);

/// Toda vector field [M, B(M)]; symmetric with zero trace.
SymmetricMatrix lax_rhs(const SymmetricMatrix& m);

enum class FlowFunction { Identity, Log, Custom };
enum class FlowIntegrator { Factorization, Rk4 };

struct FlowSpec {
    FlowFunction g = FlowFunction::Identity;
    double t = 0.0;
    FlowIntegrator integrator = FlowIntegrator::Factorization;
    double dt = 1e-3;          // rk4 step
    ScalarFunction custom_g{}; // used when g == Custom
};

/// Flow of dM/dt = [M, B(g(M))] at time spec.t.
///
/// The factorization route computes exp(t g(M0)) through the spectrum of
/// M0, QR-factorizes it and conjugates; it is exact up to linear-algebra
/// round-off and preserves the spectrum. Long times are split into
/// segments so the exponential stays well conditioned (the conjugation is
/// unchanged: shifting g by a constant scales the factor by a positive
/// scalar, which the R_ii > 0 normalization absorbs).
SymmetricMatrix g_flow(const SymmetricMatrix& m0, const FlowSpec& spec);

/// Classical RK4 on dM/dt = [M, B(M)], symmetrized every stage. Independent
/// of the factorization/eigensolver path; used as a cross-check oracle.
SymmetricMatrix toda_flow_rk4(const SymmetricMatrix& m0, double t, double dt);

/// One unshifted QR step M -> RQ = QᵀMQ.
Matrix qr_step(const Matrix& m);
SymmetricMatrix qr_step_symmetric(const SymmetricMatrix& m);
SymmetricMatrix qr_iterate(const SymmetricMatrix& m0, int k);

/// || g_flow(M0, log, t=k) - (k-th QR iterate of M0) ||_F.
/// M0 must be positive definite (real log).
double stroboscope_check(const TridiagonalMatrix& m0, int k);

struct ChoppedSpectrum {
    std::vector<std::complex<double>> roots; // sorted by (re, im)
    bool degenerate = false;                 // det((M-z)_j) identically zero
};

/// Roots of det((M - z)_j) where (M - z)_j deletes the first j rows and the
/// last j columns of M - zI. j = 0 recovers the ordinary spectrum. The
/// determinant polynomial is assembled by exact cofactor expansion in z;
/// supported for n <= 8.
ChoppedSpectrum chopped_spectrum(const SymmetricMatrix& m, int j);

/// Incremental factorization-flow evaluator for dM/dt = [M, B(g(M))].
///
/// Keeps the trajectory in the eigenvector frame: M(t) = UᵀΛU with U
/// orthogonal and Λ the (fixed) spectrum of M0. One advance() step scales
/// the rows of U by exp(ds * g(λ)) and re-orthogonalizes by QR, which is
/// algebraically the exact flow map and never meets an ill-conditioned
/// exponential for bounded ds. Copyable, so searches can checkpoint.
class SpectralFlow {
public:
    SpectralFlow(const SymmetricMatrix& m0, const ScalarFunction& g);

    void advance(double ds);
    double time() const { return t_; }
    const std::vector<double>& eigenvalues() const { return lambda_; } // ascending
    SymmetricMatrix current() const;

private:
    std::vector<double> lambda_; // ascending
    std::vector<double> gvals_;
    Matrix u_; // rows are eigenvectors of the current matrix
    double t_ = 0.0;
    double gmax_ = 0.0;
    double grange_ = 0.0;
};

} // namespace isospec
