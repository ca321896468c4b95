#include "isospec/poly.hpp"

#include <algorithm>
#include <cmath>

#include "isospec/errors.hpp"

namespace isospec {

int Poly::degree(double tol) const {
    const double cutoff = tol * max_abs_coeff();
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
        if (std::fabs(c[k]) > cutoff && c[k] != 0.0) return k;
    return -1;
}

double Poly::eval(double z) const {
    double v = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) v = v * z + c[k];
    return v;
}

std::complex<double> Poly::eval(std::complex<double> z) const {
    std::complex<double> v = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) v = v * z + c[k];
    return v;
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (double x : c) m = std::max(m, std::fabs(x));
    return m;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.c.empty() || b.c.empty()) return Poly{{}};
    Poly r;
    r.c.resize(a.c.size() + b.c.size() - 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Poly operator*(double s, const Poly& a) {
    Poly r = a;
    for (double& x : r.c) x *= s;
    return r;
}

std::vector<std::complex<double>> poly_roots(const Poly& p) {
    using cx = std::complex<double>;
    const int deg = p.degree(1e-13);
    if (deg < 1) throw DomainError("poly_roots: polynomial is constant or zero");

    // Monic normalization.
    std::vector<double> c(p.c.begin(), p.c.begin() + deg + 1);
    const double lead = c[deg];
    for (double& x : c) x /= lead;

    double radius = 0.0;
    for (int k = 0; k < deg; ++k) radius = std::max(radius, std::fabs(c[k]));
    radius = 1.0 + radius; // Cauchy bound on root moduli

    auto eval_monic = [&](cx z) {
        cx v = 1.0;
        for (int k = deg - 1; k >= 0; --k) v = v * z + c[k];
        return v;
    };
    auto eval_deriv = [&](cx z) {
        cx v = static_cast<double>(deg);
        for (int k = deg - 1; k >= 1; --k) v = v * z + static_cast<double>(k) * c[k];
        return v;
    };

    // Durand-Kerner from a deterministic non-symmetric starting circle.
    std::vector<cx> z(deg);
    for (int k = 0; k < deg; ++k) {
        const double th = 2.0 * M_PI * k / deg + 0.3573;
        z[k] = 0.5 * radius * cx(std::cos(th), std::sin(th));
    }
    const double step_tol = 1e-15 * std::max(1.0, radius);
    for (int iter = 0; iter < 600; ++iter) {
        double max_step = 0.0;
        for (int k = 0; k < deg; ++k) {
            cx denom = 1.0;
            for (int j = 0; j < deg; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (std::abs(denom) == 0.0) {
                z[k] += cx(1e-8 * radius, 1e-8 * radius);
                continue;
            }
            const cx delta = eval_monic(z[k]) / denom;
            z[k] -= delta;
            max_step = std::max(max_step, std::abs(delta));
        }
        if (max_step < step_tol) break;
    }
    // Newton polish.
    for (int k = 0; k < deg; ++k) {
        for (int it = 0; it < 3; ++it) {
            const cx d = eval_deriv(z[k]);
            if (std::abs(d) < 1e-300) break;
            z[k] -= eval_monic(z[k]) / d;
        }
    }
    return z;
}

namespace {

Poly det_recursive(const std::vector<std::vector<Poly>>& a, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
    const size_t n = rows.size();
    if (n == 1) return a[rows[0]][cols[0]];
    Poly acc{{}};
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    std::vector<int> sub_cols(n - 1);
    for (size_t j = 0; j < n; ++j) {
        for (size_t k = 0, t = 0; k < n; ++k)
            if (k != j) sub_cols[t++] = cols[k];
        Poly term = a[rows[0]][cols[j]] * det_recursive(a, sub_rows, sub_cols);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

Poly poly_det(const std::vector<std::vector<Poly>>& a) {
    const size_t n = a.size();
    if (n == 0) return Poly::constant(1.0);
    std::vector<int> rows(n), cols(n);
    for (size_t i = 0; i < n; ++i) rows[i] = cols[i] = static_cast<int>(i);
    return det_recursive(a, rows, cols);
}

} // namespace isospec
