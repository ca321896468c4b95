#include "isospec/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "isospec/errors.hpp"

namespace isospec {

TridiagonalizeResult householder_tridiagonalize(const SymmetricMatrix& m) {
    const int n = m.n();
    Matrix a = m.to_matrix();
    Matrix q = Matrix::identity(n);
    std::vector<double> v(n), w(n), u(n);

    for (int k = 0; k + 2 < n; ++k) {
        double tail2 = 0.0;
        for (int i = k + 2; i < n; ++i) tail2 += a(i, k) * a(i, k);
        if (tail2 == 0.0) continue; // column already in tridiagonal position

        const double x0 = a(k + 1, k);
        const double xnorm = std::sqrt(x0 * x0 + tail2);
        const double alpha = -std::copysign(xnorm, x0);

        v[k + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i] = a(i, k);
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
        const double vnorm = std::sqrt(vnorm2);
        for (int i = k + 1; i < n; ++i) v[i] /= vnorm;

        // Rank-2 update of the trailing block: A' = A - 2vuᵀ - 2uvᵀ
        // with w = Av, u = w - (vᵀw)v.
        double kappa = 0.0;
        for (int i = k + 1; i < n; ++i) {
            double s = 0.0;
            const double* ai = a.row(i);
            for (int j = k + 1; j < n; ++j) s += ai[j] * v[j];
            w[i] = s;
            kappa += v[i] * s;
        }
        for (int i = k + 1; i < n; ++i) u[i] = w[i] - kappa * v[i];
        for (int i = k + 1; i < n; ++i) {
            double* ai = a.row(i);
            const double vi = v[i], ui = u[i];
            for (int j = k + 1; j < n; ++j) ai[j] -= 2.0 * (vi * u[j] + ui * v[j]);
        }
        a(k + 1, k) = alpha;
        a(k, k + 1) = alpha;
        for (int i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }
        // Q <- Q (I - 2vvᵀ)
        for (int i = 0; i < n; ++i) {
            double* qi = q.row(i);
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += qi[j] * v[j];
            s *= 2.0;
            for (int j = k + 1; j < n; ++j) qi[j] -= s * v[j];
        }
    }

    TridiagonalizeResult res;
    res.t.diag.resize(n);
    res.t.off.resize(n > 0 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) res.t.diag[i] = a(i, i);
    for (int i = 0; i + 1 < n; ++i) res.t.off[i] = a(i, i + 1);
    res.q = std::move(q);
    return res;
}

namespace {

// Implicit-shift QL sweeps on (d, e); e[i] couples d[i] and d[i+1], e has
// length n with e[n-1] used as scratch. Columns of *z are rotated along.
// Classic tql2 lineage (Bowdler-Martin-Reinsch-Wilkinson / EISPACK).
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, Matrix* z, int sweep_cap) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    e[n - 1] = 0.0;
    int total_sweeps = 0;

    for (int l = 0; l < n; ++l) {
        for (;;) {
            int m;
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m == l) break;
            if (++total_sweeps > sweep_cap)
                throw ConvergenceError("symmetric eigensolver: QL sweep cap of " +
                                       std::to_string(sweep_cap) + " exceeded");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            int i;
            for (i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z) {
                    for (int k = 0; k < z->rows(); ++k) {
                        f = (*z)(k, i + 1);
                        (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
                        (*z)(k, i) = c * (*z)(k, i) - s * f;
                    }
                }
            }
            if (r == 0.0 && i >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

void sort_spectrum(std::vector<double>& d, Matrix* z) {
    const int n = static_cast<int>(d.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (int i = 0; i < n; ++i) ds[i] = d[idx[i]];
    d = std::move(ds);
    if (z) {
        Matrix zs(z->rows(), z->cols());
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < z->rows(); ++i) zs(i, j) = (*z)(i, idx[j]);
        *z = std::move(zs);
    }
}

} // namespace

Spectrum symmetric_eigen(const SymmetricMatrix& m, bool with_vectors) {
    const int n = m.n();
    TridiagonalizeResult tri = householder_tridiagonalize(m);
    std::vector<double> d = tri.t.diag;
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = tri.t.off[i];

    Matrix* zp = with_vectors ? &tri.q : nullptr;
    ql_implicit_shift(d, e, zp, 50 * std::max(1, n));
    sort_spectrum(d, zp);

    Spectrum s;
    s.values = std::move(d);
    if (with_vectors) s.vectors = std::move(tri.q);
    return s;
}

Spectrum tridiagonal_eigen(const TridiagonalMatrix& t, bool with_vectors) {
    const int n = t.n();
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = t.off[i];
    Matrix q = with_vectors ? Matrix::identity(n) : Matrix();
    Matrix* zp = with_vectors ? &q : nullptr;
    ql_implicit_shift(d, e, zp, 50 * std::max(1, n));
    sort_spectrum(d, zp);
    Spectrum s;
    s.values = std::move(d);
    if (with_vectors) s.vectors = std::move(q);
    return s;
}

Spectrum hermitian_eigen(const HermitianMatrix& m) {
    Spectrum doubled = symmetric_eigen(m.embed_real(), false);
    Spectrum s;
    s.values.reserve(m.n());
    for (int i = 0; i < m.n(); ++i) {
        // every eigenvalue appears twice in the embedding; average the pair
        s.values.push_back(0.5 * (doubled.values[2 * i] + doubled.values[2 * i + 1]));
    }
    return s;
}

QrFactors qr_factorize(const Matrix& m) {
    assert(m.rows() == m.cols());
    const int n = m.rows();
    const double scale = frobenius_norm(m);
    Matrix r = m;
    Matrix q = Matrix::identity(n);
    std::vector<double> v(n);

    for (int k = 0; k < n; ++k) {
        double norm2 = 0.0;
        for (int i = k; i < n; ++i) norm2 += r(i, k) * r(i, k);
        const double xnorm = std::sqrt(norm2);
        if (xnorm == 0.0) continue; // exactly singular column; caught below
        const double x0 = r(k, k);
        const double alpha = -std::copysign(xnorm, x0);
        v[k] = x0 - alpha;
        for (int i = k + 1; i < n; ++i) v[i] = r(i, k);
        double vnorm2 = 0.0;
        for (int i = k; i < n; ++i) vnorm2 += v[i] * v[i];
        if (vnorm2 == 0.0) continue;
        const double vnorm = std::sqrt(vnorm2);
        for (int i = k; i < n; ++i) v[i] /= vnorm;

        // R[k:, k:] <- (I - 2vvᵀ) R[k:, k:]
        for (int j = k; j < n; ++j) {
            double s = 0.0;
            for (int i = k; i < n; ++i) s += v[i] * r(i, j);
            s *= 2.0;
            for (int i = k; i < n; ++i) r(i, j) -= s * v[i];
        }
        r(k, k) = alpha;
        for (int i = k + 1; i < n; ++i) r(i, k) = 0.0;
        // Q <- Q (I - 2vvᵀ)
        for (int i = 0; i < n; ++i) {
            double* qi = q.row(i);
            double s = 0.0;
            for (int j = k; j < n; ++j) s += qi[j] * v[j];
            s *= 2.0;
            for (int j = k; j < n; ++j) qi[j] -= s * v[j];
        }
    }

    // Normalize to R_ii > 0 (flip row of R and column of Q together).
    for (int i = 0; i < n; ++i) {
        if (r(i, i) < 0.0) {
            for (int j = i; j < n; ++j) r(i, j) = -r(i, j);
            for (int k2 = 0; k2 < n; ++k2) q(k2, i) = -q(k2, i);
        }
    }
    for (int i = 0; i < n; ++i)
        if (std::fabs(r(i, i)) < 1e-14 * scale)
            throw SingularMatrixError("qr_factorize: R(" + std::to_string(i) + "," +
                                      std::to_string(i) + ") = " + format_g17(r(i, i)) +
                                      " is below 1e-14 * ||M||_F");
    return {std::move(q), std::move(r)};
}

ScalarFunction scalar_identity() {
    return {"identity", [](double x) { return x; }, nullptr};
}

ScalarFunction scalar_exp() {
    return {"exp", [](double x) { return std::exp(x); }, nullptr};
}

ScalarFunction scalar_log() {
    return {"log", [](double x) { return std::log(x); }, [](double x) { return x > 0.0; }};
}

ScalarFunction scalar_tabulated(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("scalar_tabulated: need >= 2 matching (x, y) pairs");
    for (size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1])) throw ValidationError("scalar_tabulated: x must be increasing");
    auto xs = std::make_shared<std::vector<double>>(std::move(x));
    auto ys = std::make_shared<std::vector<double>>(std::move(y));
    ScalarFunction g;
    g.name = "tabulated";
    g.f = [xs, ys](double t) {
        const auto& xv = *xs;
        const auto& yv = *ys;
        auto it = std::upper_bound(xv.begin(), xv.end(), t);
        size_t hi = std::min<size_t>(std::max<std::ptrdiff_t>(it - xv.begin(), 1), xv.size() - 1);
        size_t lo = hi - 1;
        const double w = (t - xv[lo]) / (xv[hi] - xv[lo]);
        return (1.0 - w) * yv[lo] + w * yv[hi];
    };
    g.domain = [xs](double t) { return t >= xs->front() && t <= xs->back(); };
    return g;
}

SymmetricMatrix matrix_function(const SymmetricMatrix& m, const ScalarFunction& g) {
    Spectrum s = symmetric_eigen(m, true);
    const int n = m.n();
    for (double lam : s.values)
        if (g.domain && !g.domain(lam))
            throw DomainError("matrix_function: " + g.name + " undefined at eigenvalue " +
                              format_g17(lam));
    const Matrix& v = *s.vectors;
    // B = V diag(g(λ)), result = B Vᵀ symmetrized
    Matrix b(n, n);
    for (int j = 0; j < n; ++j) {
        const double gj = g.f(s.values[j]);
        for (int i = 0; i < n; ++i) b(i, j) = v(i, j) * gj;
    }
    SymmetricMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += b(i, k) * v(j, k);
            out.set(i, j, acc);
        }
    }
    return out;
}

Poly charpoly(const Matrix& m) {
    assert(m.rows() == m.cols());
    const int n = m.rows();
    if (n > 8) throw ValidationError("charpoly: cofactor expansion supported for n <= 8");
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = (i == j) ? Poly::linear(m(i, j), -1.0) : Poly::constant(m(i, j));
    return poly_det(a);
}

CharpolyRoots charpoly_roots_small(const Matrix& m, int max_n) {
    if (m.rows() != m.cols()) throw ValidationError("charpoly_roots_small: matrix must be square");
    if (m.rows() > max_n)
        throw ValidationError("charpoly_roots_small: unsupported size n = " +
                              std::to_string(m.rows()) + " (max " + std::to_string(max_n) + ")");
    CharpolyRoots out;
    const Poly p = charpoly(m);
    if (p.degree(1e-13) < 1) {
        out.degenerate = true;
        return out;
    }
    out.roots = poly_roots(p);
    std::sort(out.roots.begin(), out.roots.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace isospec
