#include "isospec/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isospec/airy.hpp"
#include "isospec/errors.hpp"
#include "isospec/matrix.hpp"
#include "isospec/quadrature.hpp"

namespace isospec {

namespace {

inline double rhs_f(double x, double u) { return 2.0 * u * u * u + x * u; }
inline double rhs_fu(double x, double u) { return 6.0 * u * u + x; }

// Thomas algorithm for a tridiagonal system (a: sub, b: diag, c: super).
void solve_tridiagonal(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c,
                       std::vector<double>& d) {
    const int n = static_cast<int>(b.size());
    for (int i = 1; i < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (int i = n - 2; i >= 0; --i) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

} // namespace

double PainleveSolution::eval(double t) const {
    const int n = static_cast<int>(x.size());
    if (t < x.front() || t > x.back())
        throw Error("PainleveSolution::eval: argument outside the solution window");
    const double h = x[1] - x[0];
    int i = static_cast<int>((t - x.front()) / h);
    i = std::clamp(i, 1, n - 3); // 4-point stencil i-1..i+2
    const double* xs = &x[i - 1];
    const double* us = &u[i - 1];
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        double lk = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != k) lk *= (t - xs[j]) / (xs[k] - xs[j]);
        acc += lk * us[k];
    }
    return acc;
}

PainleveSolution painleve2_hastings_mcleod(double l_minus, double l_plus, int grid_n) {
    if (l_minus < 4.0) throw ValidationError("painleve2: l_minus must be >= 4");
    if (l_plus < 6.0) throw ValidationError("painleve2: l_plus must be >= 6");
    if (grid_n < 400) throw ValidationError("painleve2: grid_n must be >= 400");

    const int n = grid_n; // nodes 0..n
    const double h = (l_plus + l_minus) / n;
    const double h2 = h * h;

    PainleveSolution sol;
    sol.l_minus = l_minus;
    sol.l_plus = l_plus;
    sol.x.resize(n + 1);
    sol.u.resize(n + 1);
    for (int i = 0; i <= n; ++i) sol.x[i] = -l_minus + i * h;

    // boundary data: left asymptote sqrt(-x/2), right asymptote Ai
    sol.u.front() = std::sqrt(l_minus / 2.0);
    sol.u.back() = airy_ai(l_plus);
    for (int i = 1; i < n; ++i) {
        const double x = sol.x[i];
        if (x >= 0.0)
            sol.u[i] = airy_ai(x);
        else
            sol.u[i] = std::sqrt(-x / 2.0) + airy_ai(0.0) * std::exp(2.0 * x);
    }

    // Numerov residual R_i = u_{i-1} - 2u_i + u_{i+1}
    //                        - h^2/12 (F_{i-1} + 10 F_i + F_{i+1}),  i = 1..n-1
    std::vector<double> r(n - 1), sub(n - 1), diag(n - 1), sup(n - 1);
    auto residual = [&](const std::vector<double>& u) {
        double norm = 0.0;
        for (int i = 1; i < n; ++i) {
            const double fi = u[i - 1] - 2.0 * u[i] + u[i + 1] -
                              h2 / 12.0 *
                                  (rhs_f(sol.x[i - 1], u[i - 1]) + 10.0 * rhs_f(sol.x[i], u[i]) +
                                   rhs_f(sol.x[i + 1], u[i + 1]));
            r[i - 1] = fi;
            norm = std::max(norm, std::fabs(fi));
        }
        return norm;
    };

    double norm = residual(sol.u);
    std::string history;
    for (int iter = 0; iter < 60 && norm >= 1e-13; ++iter) {
        for (int i = 1; i < n; ++i) {
            sub[i - 1] = 1.0 - h2 / 12.0 * rhs_fu(sol.x[i - 1], sol.u[i - 1]);
            diag[i - 1] = -2.0 - 10.0 * h2 / 12.0 * rhs_fu(sol.x[i], sol.u[i]);
            sup[i - 1] = 1.0 - h2 / 12.0 * rhs_fu(sol.x[i + 1], sol.u[i + 1]);
        }
        std::vector<double> a = sub, b = diag, c = sup, d = r;
        solve_tridiagonal(a, b, c, d); // Newton direction: J delta = R, u -= delta

        double step = 1.0;
        bool improved = false;
        std::vector<double> trial = sol.u;
        for (int damp = 0; damp < 25; ++damp) {
            for (int i = 1; i < n; ++i) trial[i] = sol.u[i] - step * d[i - 1];
            const double trial_norm = residual(trial);
            if (trial_norm < norm) {
                sol.u = trial;
                norm = trial_norm;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        history += format_g17(norm) + " ";
        if (!improved) break; // at the round-off floor
    }
    if (norm >= 1e-12)
        throw ConvergenceError("painleve2: Newton stalled; residual history: " + history);
    residual(sol.u); // leave r at the final iterate

    sol.residual_norm = residual(sol.u) / h2; // in the ODE's units
    for (double v : sol.u)
        if (!(v > 0.0)) throw ConvergenceError("painleve2: solution lost positivity");
    return sol;
}

double tracy_widom_pii(double t, const PainleveSolution& sol) {
    if (t < -sol.l_minus + 1.0 || t > sol.l_plus - 1.0)
        throw Error("tracy_widom_pii: t outside the solution window [-l_minus+1, l_plus-1]");

    // int_t^{l_plus} (x - t) u(x)^2 dx on interpolated u: panels of GL(6)
    double integral = 0.0;
    const int panels = 400;
    const double width = (sol.l_plus - t) / panels;
    for (int p = 0; p < panels; ++p) {
        const QuadratureRule rule = gauss_legendre(6, t + p * width, t + (p + 1) * width);
        for (int q = 0; q < rule.size(); ++q) {
            const double x = rule.nodes[q];
            const double u = sol.eval(x);
            integral += rule.weights[q] * (x - t) * u * u;
        }
    }
    // tail past l_plus: u ~ Ai there (checked in tests to 1e-6)
    {
        const QuadratureRule rule = gauss_legendre(40, sol.l_plus, sol.l_plus + 8.0);
        for (int q = 0; q < rule.size(); ++q) {
            const double x = rule.nodes[q];
            const double ai = detail::airy_ai_any(x);
            integral += rule.weights[q] * (x - t) * ai * ai;
        }
    }
    return std::exp(-integral);
}

} // namespace isospec
