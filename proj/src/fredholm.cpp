#include "isospec/fredholm.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "isospec/airy.hpp"
#include "isospec/errors.hpp"
#include "isospec/linalg.hpp"
#include "isospec/matrix.hpp"

namespace isospec {

using cx = std::complex<double>;

Kernel IntegrableKernel::to_kernel() const {
    if (f.size() != g.size() || f.empty())
        throw ValidationError("IntegrableKernel: need matching non-empty f, g lists");
    if (!diagonal) throw ValidationError("IntegrableKernel: diagonal limit not provided");
    auto fs = f;
    auto gs = g;
    auto diag = diagonal;
    Kernel k;
    k.a = a;
    k.b = b;
    k.eval = [fs, gs, diag](double x, double y) -> cx {
        if (x == y) return diag(x);
        cx num = 0.0;
        for (size_t i = 0; i < fs.size(); ++i) num += fs[i](x) * gs[i](y);
        return num / (x - y);
    };
    return k;
}

namespace {

struct NystromDet {
    cx value;
    double log_abs;
    double arg;
};

// det(I - sqrt(w_i) K sqrt(w_j)) by complex LU with partial pivoting; the
// log-magnitude accumulates pivot by pivot so large determinants stay
// representable.
NystromDet nystrom_det(const Kernel& kernel, int m) {
    const QuadratureRule rule =
        kernel.quadrature ? kernel.quadrature(m) : gauss_legendre(m, kernel.a, kernel.b);
    const int n = rule.size();
    std::vector<double> sw(n);
    for (int i = 0; i < n; ++i) {
        if (!(rule.weights[i] > 0.0)) throw ValidationError("fredholm_det: non-positive weight");
        sw[i] = std::sqrt(rule.weights[i]);
    }
    std::vector<cx> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cx kij = kernel.eval(rule.nodes[i], rule.nodes[j]);
            a[static_cast<size_t>(i) * n + j] = (i == j ? 1.0 : 0.0) - sw[i] * kij * sw[j];
        }

    double log_abs = 0.0;
    cx phase = 1.0;
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::abs(a[static_cast<size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[static_cast<size_t>(i) * n + k]);
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0) return {0.0, -std::numeric_limits<double>::infinity(), 0.0};
        if (pivot != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<size_t>(pivot) * n + j], a[static_cast<size_t>(k) * n + j]);
            phase = -phase;
        }
        const cx akk = a[static_cast<size_t>(k) * n + k];
        log_abs += std::log(std::abs(akk));
        phase *= akk / std::abs(akk);
        for (int i = k + 1; i < n; ++i) {
            const cx factor = a[static_cast<size_t>(i) * n + k] / akk;
            if (factor == cx(0.0)) continue;
            for (int j = k + 1; j < n; ++j)
                a[static_cast<size_t>(i) * n + j] -= factor * a[static_cast<size_t>(k) * n + j];
        }
    }
    NystromDet out;
    out.log_abs = log_abs;
    out.arg = std::arg(phase);
    out.value = std::exp(log_abs) * phase;
    return out;
}

} // namespace

FredholmResult fredholm_det(const Kernel& kernel, int m, double tol) {
    if (m < 2) throw ValidationError("fredholm_det: need m >= 2");
    if (!kernel.eval) throw ValidationError("fredholm_det: kernel has no evaluator");
    const NystromDet coarse = nystrom_det(kernel, m);
    const NystromDet fine = nystrom_det(kernel, 2 * m);

    FredholmResult res;
    res.value = coarse.value;
    res.log_abs = coarse.log_abs;
    res.arg = coarse.arg;
    if (std::isfinite(std::abs(coarse.value)) && std::isfinite(std::abs(fine.value))) {
        // relative once the determinant leaves O(1), absolute below
        res.refinement_gap = std::abs(coarse.value - fine.value) / std::max(1.0, std::abs(coarse.value));
    } else {
        res.refinement_gap = std::fabs(coarse.log_abs - fine.log_abs) +
                             std::fabs(std::remainder(coarse.arg - fine.arg, 2.0 * M_PI));
    }
    res.converged = res.refinement_gap < tol;
    return res;
}

std::vector<double> kernel_eigenvalues(const Kernel& kernel, int m) {
    if (m < 2) throw ValidationError("kernel_eigenvalues: need m >= 2");
    const QuadratureRule rule =
        kernel.quadrature ? kernel.quadrature(m) : gauss_legendre(m, kernel.a, kernel.b);
    const int n = rule.size();
    Matrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cx kij = kernel.eval(rule.nodes[i], rule.nodes[j]);
            if (std::fabs(kij.imag()) > 1e-12 * (1.0 + std::fabs(kij.real())))
                throw DomainError("kernel_eigenvalues: kernel is not real");
            w(i, j) = std::sqrt(rule.weights[i]) * kij.real() * std::sqrt(rule.weights[j]);
        }
    SymmetricMatrix s = SymmetricMatrix::checked(w, 1e-10 * (1.0 + max_abs(w)));
    Spectrum spec = symmetric_eigen(s, false);
    std::vector<double> vals(spec.values.rbegin(), spec.values.rend()); // descending
    return vals;
}

Kernel sine_kernel(double s) {
    if (s < 0.0) throw ValidationError("sine_kernel: s must be >= 0");
    Kernel k;
    k.a = 0.0;
    k.b = 2.0 * s;
    k.eval = [](double x, double y) -> cx {
        const double u = x - y;
        if (std::fabs(u) < 1e-8) {
            // sin(u)/(pi u) = (1 - u^2/6 + u^4/120 ...) / pi
            return (1.0 - u * u / 6.0) / M_PI;
        }
        return std::sin(u) / (M_PI * u);
    };
    return k;
}

double sine_kernel_gap(double s, int m) {
    if (s < 0.0) throw ValidationError("sine_kernel_gap: s must be >= 0");
    if (s == 0.0) return 1.0; // empty interval
    return fredholm_det(sine_kernel(s), m).value.real();
}

Kernel airy_kernel(double t, double length) {
    if (t < -8.0) throw ValidationError("airy_kernel: t must be >= -8");
    if (!(length > 0.0)) throw ValidationError("airy_kernel: length must be positive");
    Kernel k;
    k.a = t;
    k.b = t + length;
    k.eval = [](double x, double y) -> cx {
        if (x == y) {
            const double ai = detail::airy_ai_any(x);
            const double aip = detail::airy_ai_prime_any(x);
            return aip * aip - x * ai * ai;
        }
        const double num = detail::airy_ai_any(x) * detail::airy_ai_prime_any(y) -
                           detail::airy_ai_prime_any(x) * detail::airy_ai_any(y);
        return num / (x - y);
    };
    return k;
}

double airy_kernel_det(double t, int m) {
    return fredholm_det(airy_kernel(t), m).value.real();
}

} // namespace isospec
