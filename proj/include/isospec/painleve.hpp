#pragma once

#include <vector>

namespace isospec {

/// Hastings-McLeod solution of Painleve II, u'' = 2u^3 + xu, on a uniform
/// grid over [-l_minus, l_plus]. Positive and decreasing; u ~ Ai(x) on the
/// right, u ~ sqrt(-x/2) on the left.
struct PainleveSolution {
    std::vector<double> x;
    std::vector<double> u;
    double l_minus = 0.0;
    double l_plus = 0.0;
    double residual_norm = 0.0; // max |u'' - 2u^3 - xu| estimate on interior nodes

    /// Piecewise-cubic interpolation of u (4-point Lagrange).
    double eval(double t) const;
};

/// Solves the two-point boundary value problem with u(-l_minus) =
/// sqrt(l_minus/2) and u(l_plus) = Ai(l_plus) by Newton iteration on a
/// fourth-order compact (Numerov) discretization. The BVP formulation
/// avoids the exponential instability of forward shooting.
PainleveSolution painleve2_hastings_mcleod(double l_minus = 8.0, double l_plus = 8.0,
                                           int grid_n = 1600);

/// Tracy-Widom CDF F(t) = exp(-int_t^inf (x - t) u(x)^2 dx); the tail past
/// l_plus uses the Airy asymptote of u. Requires t within
/// [-l_minus + 1, l_plus - 1].
double tracy_widom_pii(double t, const PainleveSolution& sol);

} // namespace isospec
