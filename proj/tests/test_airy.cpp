#include <doctest.h>

#include <cmath>

#include "isospec/airy.hpp"
#include "isospec/errors.hpp"

using namespace isospec;

namespace {

// Independent Maclaurin oracle in extended precision. Usable wherever the
// term growth e^{(2/3)|x|^{3/2}} stays well below 1/eps(long double).
long double airy_series_oracle(long double x) {
    const long double ai0 = 0.35502805388781723926L;
    const long double aip0 = -0.25881940379280679841L;
    const long double x3 = x * x * x;
    long double f = 1.0L, g = x, tf = 1.0L, tg = x;
    for (int k = 0; k < 200; ++k) {
        tf *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        tg *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        f += tf;
        g += tg;
        if (std::fabs((double)tf) < 1e-30 && std::fabs((double)tg) < 1e-30) break;
    }
    return ai0 * f + aip0 * g;
}

} // namespace

TEST_CASE("airy_ai: value at 0 against the closed form") {
    // 3^{-2/3} / Gamma(2/3)
    CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-13));
    CHECK(airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928068).epsilon(1e-13));
}

TEST_CASE("airy_ai matches the extended-precision series oracle") {
    // spans the series region, the switch points, and both asymptotic sides
    for (double x :
         {-8.0, -7.0, -6.51, -6.49, -6.0, -3.0, -1.0, 0.5, 2.0, 5.49, 5.51, 6.0, 7.0, 8.0}) {
        const double oracle = static_cast<double>(airy_series_oracle(x));
        CHECK(std::fabs(airy_ai(x) - oracle) < 1e-10);
    }
}

TEST_CASE("airy_ai: asymptotic form at x = 5 within 2%") {
    const double x = 5.0;
    const double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    const double leading = std::exp(-zeta) / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25));
    CHECK(airy_ai(x) == doctest::Approx(leading).epsilon(0.02));
}

TEST_CASE("airy satisfies Ai'' = x Ai across the whole supported range") {
    // Strict bound on the core range; the 1/h^2 amplification of the
    // evaluation noise (and the series/asymptotic hand-off) caps what a raw
    // second difference can resolve farther out.
    const double h = 5e-4;
    for (double x = -5.0; x <= 5.0; x += 0.125) {
        const double second = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(std::fabs(second - x * airy_ai(x)) < 1e-6);
    }
    const double hw = 1e-3;
    for (double x = -14.0; x <= 14.0; x += 0.25) {
        const double second = (airy_ai(x + hw) - 2.0 * airy_ai(x) + airy_ai(x - hw)) / (hw * hw);
        CHECK(std::fabs(second - x * airy_ai(x)) < 5e-5);
    }
}

TEST_CASE("airy derivative consistent with finite differences of Ai") {
    const double h = 1e-5;
    for (double x : {-9.0, -4.0, -1.0, 0.0, 1.5, 4.0, 7.0}) {
        const double fd = (airy_ai(x + h) - airy_ai(x - h)) / (2.0 * h);
        CHECK(airy_ai_prime(x) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("airy_ai: out-of-range input raises") {
    CHECK_THROWS_AS(airy_ai(15.5), Error);
    CHECK_THROWS_AS(airy_ai(-15.5), Error);
    CHECK_NOTHROW(detail::airy_ai_any(40.0)); // kernel path continues rightward
    CHECK_THROWS_AS(detail::airy_ai_any(-15.5), Error);
}
