#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "isospec/quadrature.hpp"

namespace isospec {

/// Kernel of an integral operator on [a, b]. eval(x, y) must be defined on
/// the diagonal as well (the continuous limit for integrable kernels). An
/// optional quadrature overrides the default Gauss-Legendre rule, for
/// kernels whose components have endpoint derivative singularities.
struct Kernel {
    double a = 0.0;
    double b = 0.0;
    std::function<std::complex<double>(double, double)> eval;
    std::function<QuadratureRule(int)> quadrature; // empty => GL on [a, b]
};

/// Kernel in the sum form K(x, y) = sum_i f_i(x) g_i(y) / (x - y), with an
/// explicit diagonal limit (finite when sum_i f_i g_i vanishes on the
/// diagonal).
struct IntegrableKernel {
    std::vector<std::function<std::complex<double>(double)>> f;
    std::vector<std::function<std::complex<double>(double)>> g;
    std::function<std::complex<double>(double)> diagonal;
    double a = 0.0;
    double b = 0.0;

    Kernel to_kernel() const;
};

struct FredholmResult {
    std::complex<double> value; // det(I - K_m), Nystrom at the requested m
    double log_abs = 0.0;       // log |det| (robust for large determinants)
    double arg = 0.0;           // arg det
    double refinement_gap = 0.0; // |det_m - det_2m| / max(1, |det_m|)
    bool converged = true;       // refinement_gap < tol
};

/// Nystrom Fredholm determinant det(delta_ij - sqrt(w_i) K(x_i, x_j)
/// sqrt(w_j)) with an m -> 2m self-convergence certificate.
FredholmResult fredholm_det(const Kernel& kernel, int m = 50, double tol = 1e-8);

/// Eigenvalues of the symmetrized Nystrom matrix sqrt(w_i) K sqrt(w_j),
/// descending. The kernel must be real symmetric on its interval.
std::vector<double> kernel_eigenvalues(const Kernel& kernel, int m = 50);

/// Sine kernel sin(x - y) / (pi (x - y)) on [0, 2s].
Kernel sine_kernel(double s);

/// Gap probability det(1 - K_s); 1 at s = 0, strictly decreasing.
double sine_kernel_gap(double s, int m = 50);

/// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y) on [t, t + length].
Kernel airy_kernel(double t, double length = 12.0);

/// Tracy-Widom CDF via the Airy-operator determinant det(1 - A_t); the
/// semi-infinite domain is truncated at length 12 (the kernel decays
/// super-exponentially). Requires t >= -8.
double airy_kernel_det(double t, int m = 60);

} // namespace isospec
