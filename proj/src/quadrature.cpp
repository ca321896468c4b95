#include "isospec/quadrature.hpp"

#include <cmath>

#include "isospec/errors.hpp"

namespace isospec {

QuadratureRule gauss_legendre(int m, double a, double b) {
    if (m < 1) throw ValidationError("gauss_legendre: m must be >= 1");
    if (!(a < b)) throw ValidationError("gauss_legendre: need a < b");

    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const int half = (m + 1) / 2;
    const double mid = 0.5 * (a + b);
    const double span = 0.5 * (b - a);

    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_m
        double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence up to degree m
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        rule.nodes[i] = mid - span * z;
        rule.nodes[m - 1 - i] = mid + span * z;
        const double w = 2.0 * span / ((1.0 - z * z) * pp * pp);
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    return rule;
}

} // namespace isospec
