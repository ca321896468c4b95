#pragma once

#include "isospec/fredholm.hpp"

namespace isospec {

struct XyResult {
    double value = 0.0;       // X(t) = exp(-t^2/2) Re det(1 - K_t)
    double im_residual = 0.0; // |Im det| / |det|
    double log_abs_det = 0.0; // log |det(1 - K_t)|
    double arg_det = 0.0;
    bool det_converged = true;
};

/// Spin-spin autocorrelation of the XY chain in a transverse field,
/// X(t) = exp(-t^2/2) det(1 - K_t), where K_t is the integrable operator on
/// (-1, 1) with kernel phi(z) sin(it(z - z'))/(pi (z - z')) =
/// i phi(z) sinh(t(z - z'))/(pi (z - z')), phi(z) = tanh(beta sqrt(1 - z^2)).
/// Assembled from the f, g components and evaluated in complex arithmetic.
///
/// The determinant of this kernel is complex: tr K = (i t / pi) int phi is
/// purely imaginary, and the phase arg det = -sum arctan(rho_j) over the
/// (real) spectrum of the symmetrized sinh kernel stays bounded but does
/// not vanish. The imaginary part is therefore reported as a residual, not
/// asserted away; |det| carries the exponential decay law, and Re det
/// stays positive on the tested range.
XyResult xy_autocorrelation(double t, double beta, int m = 60);

/// The integrable kernel itself (for direct determinant experiments). The
/// attached quadrature substitutes z = sin(theta), which removes the
/// square-root endpoint singularity of phi's derivative from the rule.
Kernel xy_kernel(double t, double beta);

/// Long-time log-slope (1/pi) int_{-1}^{1} log |tanh(beta s)| ds; the
/// logarithmic singularity at s = 0 is split off and integrated exactly.
/// Always negative.
double xy_asymptotic_slope(double beta, int m = 100);

} // namespace isospec
