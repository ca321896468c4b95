#include "isospec/airy.hpp"

#include <cmath>

#include "isospec/errors.hpp"
#include "isospec/matrix.hpp"

namespace isospec {

namespace {

constexpr double kAi0 = 0.35502805388781723926; // 3^(-2/3) / Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841; // -3^(-1/3) / Gamma(1/3)
// Series/asymptotic hand-off. Asymmetric: the right-hand expansion is far
// more accurate at equal zeta (Ai is exponentially small there), while on
// the left the oscillatory series needs zeta = (2/3)|x|^{3/2} ~ 11 before
// its optimal truncation beats 1e-10 absolute.
constexpr double kSwitchRight = 5.5;
constexpr double kSwitchLeft = -6.5;

struct AiryPair {
    double ai;
    double aip;
};

// Maclaurin solution basis of w'' = x w:
//   f: f(0)=1, f'(0)=0;  g: g(0)=0, g'(0)=1
// Ai = Ai(0) f + Ai'(0) g. Converges everywhere; usable while the terms do
// not overwhelm the result (|x| <= ~7 keeps the cancellation below ~1e5).
AiryPair airy_series(double x) {
    if (x == 0.0) return {kAi0, kAip0};
    const double x3 = x * x * x;
    double f = 1.0, fp = 0.0; // fp accumulates f'
    double g = x, gp = 1.0;
    double tf = 1.0, tg = x;
    for (int k = 0; k < 90; ++k) {
        const double den_f = (3.0 * k + 2.0) * (3.0 * k + 3.0);
        const double den_g = (3.0 * k + 3.0) * (3.0 * k + 4.0);
        tf *= x3 / den_f; // x^{3(k+1)} term of f
        tg *= x3 / den_g; // x^{3(k+1)+1} term of g
        f += tf;
        g += tg;
        // derivatives: d/dx x^{3m} = 3m x^{3m-1}; d/dx x^{3m+1} = (3m+1) x^{3m}
        fp += tf * (3.0 * (k + 1)) / x;
        gp += tg * (3.0 * (k + 1) + 1.0) / x;
        if (std::fabs(tf) < 1e-22 * std::fabs(f) && std::fabs(tg) < 1e-22 * std::max(1.0, std::fabs(g)))
            break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// u_k, v_k coefficients of the asymptotic expansions (DLMF 9.7):
//   u_0 = 1, u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1))
//   v_k = u_k (6k+1)/(1-6k)
constexpr int kMaxAsym = 40;

struct AsymCoeffs {
    double u[kMaxAsym];
    double v[kMaxAsym];
    AsymCoeffs() {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 1; k < kMaxAsym; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                   (216.0 * k * (2.0 * k - 1.0));
            v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        }
    }
};

const AsymCoeffs kCoeffs;

// Sums sum_k c_k s^k truncated at the smallest term (asymptotic series).
double asym_sum(const double* c, double s) {
    double acc = c[0];
    double prev = std::fabs(c[0]);
    double sk = 1.0;
    for (int k = 1; k < kMaxAsym; ++k) {
        sk *= s;
        const double term = c[k] * sk;
        if (std::fabs(term) > prev) break; // divergence point reached
        acc += term;
        prev = std::fabs(term);
    }
    return acc;
}

AiryPair airy_asymptotic_right(double x) {
    const double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    const double x14 = std::pow(x, 0.25);
    const double pref = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    double su = 0.0, sv = 0.0;
    {
        // alternating series in 1/zeta
        double alt_u[kMaxAsym], alt_v[kMaxAsym];
        for (int k = 0; k < kMaxAsym; ++k) {
            const double sign = (k % 2) ? -1.0 : 1.0;
            alt_u[k] = sign * kCoeffs.u[k];
            alt_v[k] = sign * kCoeffs.v[k];
        }
        su = asym_sum(alt_u, 1.0 / zeta);
        sv = asym_sum(alt_v, 1.0 / zeta);
    }
    return {pref / x14 * su, -pref * x14 * sv};
}

AiryPair airy_asymptotic_left(double x) {
    const double z = -x;
    const double zeta = (2.0 / 3.0) * std::pow(z, 1.5);
    const double z14 = std::pow(z, 0.25);
    const double c = std::cos(zeta - 0.25 * M_PI);
    const double s = std::sin(zeta - 0.25 * M_PI);
    // even/odd splits with alternating signs: sum (-1)^k u_{2k} zeta^{-2k}, etc.
    double ue[kMaxAsym] = {0}, uo[kMaxAsym] = {0}, ve[kMaxAsym] = {0}, vo[kMaxAsym] = {0};
    for (int k = 0; 2 * k < kMaxAsym; ++k) {
        const double sign = (k % 2) ? -1.0 : 1.0;
        ue[k] = sign * kCoeffs.u[2 * k];
        ve[k] = sign * kCoeffs.v[2 * k];
        if (2 * k + 1 < kMaxAsym) {
            uo[k] = sign * kCoeffs.u[2 * k + 1];
            vo[k] = sign * kCoeffs.v[2 * k + 1];
        }
    }
    const double s2 = 1.0 / (zeta * zeta);
    const double sum_ue = asym_sum(ue, s2);
    const double sum_uo = asym_sum(uo, s2) / zeta;
    const double sum_ve = asym_sum(ve, s2);
    const double sum_vo = asym_sum(vo, s2) / zeta;
    const double ai = (c * sum_ue + s * sum_uo) / (std::sqrt(M_PI) * z14);
    const double aip = (s * sum_ve - c * sum_vo) * z14 / std::sqrt(M_PI);
    return {ai, aip};
}

AiryPair airy_pair_any(double x) {
    if (x > kSwitchRight) return airy_asymptotic_right(x);
    if (x < kSwitchLeft) return airy_asymptotic_left(x);
    return airy_series(x);
}

} // namespace

namespace detail {

double airy_ai_any(double x) {
    if (x < -15.0) throw Error("airy: argument below supported range (x < -15)");
    return airy_pair_any(x).ai;
}

double airy_ai_prime_any(double x) {
    if (x < -15.0) throw Error("airy: argument below supported range (x < -15)");
    return airy_pair_any(x).aip;
}

} // namespace detail

double airy_ai(double x) {
    if (std::fabs(x) > 15.0)
        throw Error("airy_ai: |x| = " + format_g17(std::fabs(x)) + " outside supported range 15");
    return airy_pair_any(x).ai;
}

double airy_ai_prime(double x) {
    if (std::fabs(x) > 15.0)
        throw Error("airy_ai_prime: |x| = " + format_g17(std::fabs(x)) +
                    " outside supported range 15");
    return airy_pair_any(x).aip;
}

} // namespace isospec
