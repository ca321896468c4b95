#include "isospec/flows.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "isospec/errors.hpp"

namespace isospec {

TridiagonalMatrix flaschka(const FlaschkaState& state) {
    const int n = static_cast<int>(state.x.size());
    if (static_cast<int>(state.y.size()) != n)
        throw ValidationError("flaschka: x and y must have equal length");
    TridiagonalMatrix t;
    t.diag.resize(n);
    t.off.resize(n > 0 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(state.y[k]) || !std::isfinite(state.x[k]))
            throw DomainError("flaschka: non-finite state entry");
        t.diag[k] = -0.5 * state.y[k];
    }
    for (int k = 0; k + 1 < n; ++k) {
        const double arg = 0.5 * (state.x[k] - state.x[k + 1]);
        if (arg > 708.0)
            throw DomainError("flaschka: exp overflow, x_" + std::to_string(k + 1) + " - x_" +
                              std::to_string(k + 2) + " too large");
        t.off[k] = 0.5 * std::exp(arg);
    }
    return t;
}

FlaschkaState inverse_flaschka(const TridiagonalMatrix& t) {
    const int n = t.n();
    FlaschkaState s;
    s.x.resize(n);
    s.y.resize(n);
    for (int k = 0; k < n; ++k) s.y[k] = -2.0 * t.diag[k];
    for (int k = 0; k + 1 < n; ++k)
        if (!(t.off[k] > 0.0))
            throw DomainError("inverse_flaschka: b_" + std::to_string(k + 1) + " = " +
                              format_g17(t.off[k]) + " is not positive");
    // x_k - x_{k+1} = 2 ln(2 b_k); gauge sum(x) = 0
    s.x[0] = 0.0;
    for (int k = 0; k + 1 < n; ++k) s.x[k + 1] = s.x[k] - 2.0 * std::log(2.0 * t.off[k]);
    double mean = 0.0;
    for (double v : s.x) mean += v;
    mean /= n;
    for (double& v : s.x) v -= mean;
    return s;
}

Matrix toda_b(const SymmetricMatrix& m) {
    const int n = m.n();
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            b(i, j) = m(i, j);
            b(j, i) = -m(i, j);
        }
    return b;
}

SymmetricMatrix lax_rhs(const SymmetricMatrix& m) {
    Matrix b = toda_b(m);
    Matrix mm = m.to_matrix();
    Matrix comm = mm * b - b * mm;
    return SymmetricMatrix::symmetrized(comm);
}

namespace {

ScalarFunction resolve_g(const FlowSpec& spec) {
    switch (spec.g) {
        case FlowFunction::Identity: return scalar_identity();
        case FlowFunction::Log: return scalar_log();
        case FlowFunction::Custom:
            if (!spec.custom_g.f) throw ValidationError("FlowSpec: custom g has no function");
            return spec.custom_g;
    }
    throw ValidationError("FlowSpec: unknown g");
}

SymmetricMatrix rk4_flow(const SymmetricMatrix& m0, const ScalarFunction& g, double t, double dt,
                         bool g_is_identity) {
    if (!(dt > 0.0)) throw ValidationError("FlowSpec: dt must be positive for rk4");
    auto rhs = [&](const SymmetricMatrix& m) {
        if (g_is_identity) return lax_rhs(m);
        SymmetricMatrix gm = matrix_function(m, g);
        Matrix b = toda_b(gm);
        Matrix mm = m.to_matrix();
        return SymmetricMatrix::symmetrized(mm * b - b * mm);
    };
    SymmetricMatrix m = m0;
    double remaining = t;
    while (remaining > 1e-15 * std::max(1.0, t)) {
        const double h = std::min(dt, remaining);
        SymmetricMatrix k1 = rhs(m);
        Matrix mm = m.to_matrix();
        SymmetricMatrix k2 = rhs(SymmetricMatrix::symmetrized(mm + (0.5 * h) * k1.to_matrix()));
        SymmetricMatrix k3 = rhs(SymmetricMatrix::symmetrized(mm + (0.5 * h) * k2.to_matrix()));
        SymmetricMatrix k4 = rhs(SymmetricMatrix::symmetrized(mm + h * k3.to_matrix()));
        Matrix next = mm + (h / 6.0) * (k1.to_matrix() + 2.0 * k2.to_matrix() +
                                        2.0 * k3.to_matrix() + k4.to_matrix());
        m = SymmetricMatrix::symmetrized(next);
        remaining -= h;
    }
    return m;
}

} // namespace

SpectralFlow::SpectralFlow(const SymmetricMatrix& m0, const ScalarFunction& g) {
    Spectrum s = symmetric_eigen(m0, true);
    lambda_ = s.values;
    gvals_.resize(lambda_.size());
    for (size_t i = 0; i < lambda_.size(); ++i) {
        if (g.domain && !g.domain(lambda_[i]))
            throw DomainError("flow function " + g.name + " undefined at eigenvalue " +
                              format_g17(lambda_[i]));
        gvals_[i] = g.f(lambda_[i]);
    }
    gmax_ = gvals_.empty() ? 0.0 : *std::max_element(gvals_.begin(), gvals_.end());
    const double gmin = gvals_.empty() ? 0.0 : *std::min_element(gvals_.begin(), gvals_.end());
    grange_ = gmax_ - gmin;
    u_ = transpose(*s.vectors); // rows are eigenvectors
}

void SpectralFlow::advance(double ds) {
    if (ds < 0.0) throw ValidationError("SpectralFlow: cannot flow backwards");
    const int n = static_cast<int>(lambda_.size());
    double remaining = ds;
    // Segment so the scaled rows span at most e^20 in magnitude; QR then
    // never sees a numerically rank-deficient factor (|R_ii| >= sigma_min
    // = exp(-seg * grange)).
    const double seg_cap = grange_ > 0.0 ? 20.0 / grange_ : ds;
    while (remaining > 0.0) {
        const double s = std::min(remaining, seg_cap);
        Matrix g(n, n);
        for (int i = 0; i < n; ++i) {
            const double scale = std::exp(s * (gvals_[i] - gmax_));
            const double* ui = u_.row(i);
            double* gi = g.row(i);
            for (int j = 0; j < n; ++j) gi[j] = scale * ui[j];
        }
        QrFactors f = qr_factorize(g);
        // M(t+s) = QᵀΛQ where the full-space factor is Q = U_oldᵀ Q_g;
        // the new frame matrix (rows = eigenvectors) is exactly Q_g.
        u_ = std::move(f.q);
        remaining -= s;
        t_ += s;
        if (s == 0.0) break; // ds == 0
    }
}

SymmetricMatrix SpectralFlow::current() const {
    // M = UᵀΛU accumulated as rank-1 updates over the rows of U; the inner
    // loop is unit-stride on the upper triangle.
    const int n = static_cast<int>(lambda_.size());
    Matrix upper(n, n);
    for (int k = 0; k < n; ++k) {
        const double* uk = u_.row(k);
        const double lam = lambda_[k];
        for (int i = 0; i < n; ++i) {
            const double c = lam * uk[i];
            double* mi = upper.row(i);
            for (int j = i; j < n; ++j) mi[j] += c * uk[j];
        }
    }
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, upper(i, j));
    return m;
}

SymmetricMatrix g_flow(const SymmetricMatrix& m0, const FlowSpec& spec) {
    if (spec.t < 0.0) throw ValidationError("FlowSpec: t must be >= 0");
    const ScalarFunction g = resolve_g(spec);
    if (spec.integrator == FlowIntegrator::Rk4)
        return rk4_flow(m0, g, spec.t, spec.dt, spec.g == FlowFunction::Identity);
    if (spec.t == 0.0) return m0;
    SpectralFlow flow(m0, g);
    flow.advance(spec.t);
    return flow.current();
}

SymmetricMatrix toda_flow_rk4(const SymmetricMatrix& m0, double t, double dt) {
    return rk4_flow(m0, scalar_identity(), t, dt, true);
}

Matrix qr_step(const Matrix& m) {
    QrFactors f = qr_factorize(m);
    return f.r * f.q;
}

SymmetricMatrix qr_step_symmetric(const SymmetricMatrix& m) {
    QrFactors f = qr_factorize(m.to_matrix());
    return SymmetricMatrix::symmetrized(f.r * f.q);
}

SymmetricMatrix qr_iterate(const SymmetricMatrix& m0, int k) {
    SymmetricMatrix m = m0;
    for (int i = 0; i < k; ++i) m = qr_step_symmetric(m);
    return m;
}

double stroboscope_check(const TridiagonalMatrix& m0, int k) {
    if (k < 0) throw ValidationError("stroboscope_check: k must be >= 0");
    SymmetricMatrix m = m0.to_symmetric();
    Spectrum s = symmetric_eigen(m, false);
    if (s.values.front() <= 0.0)
        throw DomainError("stroboscope_check: M0 not positive definite (min eigenvalue " +
                          format_g17(s.values.front()) + ")");
    FlowSpec spec;
    spec.g = FlowFunction::Log;
    spec.t = static_cast<double>(k);
    SymmetricMatrix hamiltonian_path = g_flow(m, spec);
    SymmetricMatrix qr_path = qr_iterate(m, k);
    return frobenius_norm(hamiltonian_path.to_matrix() - qr_path.to_matrix());
}

ChoppedSpectrum chopped_spectrum(const SymmetricMatrix& m, int j) {
    const int n = m.n();
    if (j < 0 || 2 * j > n)
        throw ValidationError("chopped_spectrum: need 0 <= j <= n/2, got j = " + std::to_string(j));
    if (n > 8) throw ValidationError("chopped_spectrum: cofactor expansion supported for n <= 8");
    const int size = n - j;
    // rows j..n-1, columns 0..n-1-j of (M - zI)
    std::vector<std::vector<Poly>> a(size, std::vector<Poly>(size));
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            const int i = r + j;
            a[r][c] = (i == c) ? Poly::linear(m(i, c), -1.0) : Poly::constant(m(i, c));
        }
    Poly det = poly_det(a);

    ChoppedSpectrum out;
    const double scale = std::pow(std::max(1.0, frobenius_norm(m)), size);
    if (det.max_abs_coeff() <= 1e-10 * scale) {
        out.degenerate = true;
        return out;
    }
    if (det.degree(1e-12) < 1) return out; // constant determinant: no roots
    out.roots = poly_roots(det);
    std::sort(out.roots.begin(), out.roots.end(), [](auto x, auto y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

} // namespace isospec
