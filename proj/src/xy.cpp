#include "isospec/xy.hpp"

#include <cmath>
#include <complex>

#include "isospec/errors.hpp"
#include "isospec/matrix.hpp"

namespace isospec {

using cx = std::complex<double>;

Kernel xy_kernel(double t, double beta) {
    if (t < 0.0) throw ValidationError("xy_kernel: t must be >= 0");
    if (!(beta > 0.0)) throw ValidationError("xy_kernel: beta must be positive");

    auto phi = [beta](double z) { return std::tanh(beta * std::sqrt(std::max(0.0, 1.0 - z * z))); };

    // f = (-e^{tz} phi/(2 pi i), -e^{-tz} phi/(2 pi i)), g = (e^{-tz}, -e^{tz})
    const cx inv_2pii = 1.0 / (2.0 * M_PI * cx(0.0, 1.0));
    IntegrableKernel ik;
    ik.a = -1.0;
    ik.b = 1.0;
    ik.f = {[=](double z) { return -std::exp(t * z) * phi(z) * inv_2pii; },
            [=](double z) { return -std::exp(-t * z) * phi(z) * inv_2pii; }};
    ik.g = {[=](double z) { return cx(std::exp(-t * z)); },
            [=](double z) { return cx(-std::exp(t * z)); }};
    // diagonal limit: phi(z) sin(it u)/(pi u) -> i t phi(z)/pi as u -> 0
    ik.diagonal = [=](double z) { return cx(0.0, t * phi(z) / M_PI); };

    Kernel k = ik.to_kernel();
    // phi has a sqrt endpoint singularity in its derivative; z = sin(theta)
    // makes every kernel component analytic on the quadrature domain.
    k.quadrature = [](int m) {
        QuadratureRule theta = gauss_legendre(m, -M_PI / 2.0, M_PI / 2.0);
        QuadratureRule rule;
        rule.nodes.resize(m);
        rule.weights.resize(m);
        for (int i = 0; i < m; ++i) {
            rule.nodes[i] = std::sin(theta.nodes[i]);
            rule.weights[i] = theta.weights[i] * std::cos(theta.nodes[i]);
        }
        return rule;
    };
    return k;
}

XyResult xy_autocorrelation(double t, double beta, int m) {
    if (t < 0.0) throw ValidationError("xy_autocorrelation: t must be >= 0");
    if (!(beta > 0.0)) throw ValidationError("xy_autocorrelation: beta must be positive");
    if (t == 0.0) return {1.0, 0.0, 0.0, 0.0, true}; // kernel vanishes: det = 1, X = 1

    const FredholmResult det = fredholm_det(xy_kernel(t, beta), m, 1e-8);
    XyResult res;
    res.log_abs_det = det.log_abs;
    res.arg_det = det.arg;
    res.det_converged = det.converged;
    res.im_residual = std::fabs(std::sin(det.arg)); // |Im det| / |det|
    // X = exp(-t^2/2) Re det, evaluated in the log domain
    res.value = std::cos(det.arg) * std::exp(det.log_abs - 0.5 * t * t);
    return res;
}

double xy_asymptotic_slope(double beta, int m) {
    if (!(beta > 0.0)) throw ValidationError("xy_asymptotic_slope: beta must be positive");
    if (m < 4) throw ValidationError("xy_asymptotic_slope: m too small");
    // (1/pi) int_{-1}^1 log|tanh(beta s)| ds
    //   = (2/pi) [ int_0^1 log(tanh(beta s)/(beta s)) ds + log(beta) - 1 ]
    // with the log singularity integrated exactly.
    const QuadratureRule rule = gauss_legendre(m, 0.0, 1.0);
    double smooth = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        const double s = rule.nodes[i];
        const double u = beta * s;
        smooth += rule.weights[i] * std::log(std::tanh(u) / u);
    }
    return (2.0 / M_PI) * (smooth + std::log(beta) - 1.0);
}

} // namespace isospec
