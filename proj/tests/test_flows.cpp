#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "isospec/errors.hpp"
#include "isospec/flows.hpp"
#include "isospec/linalg.hpp"
#include "isospec/rng.hpp"
#include "test_util.hpp"

using namespace isospec;

namespace {

double sym_diff_norm(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return frobenius_norm(a.to_matrix() - b.to_matrix());
}

} // namespace

TEST_CASE("flaschka: hand values and positivity") {
    TridiagonalMatrix t1 = flaschka({{0.0, 0.0}, {0.0, 0.0}});
    CHECK(t1.diag[0] == 0.0);
    CHECK(t1.diag[1] == 0.0);
    CHECK(t1.off[0] == doctest::Approx(0.5));

    TridiagonalMatrix t2 = flaschka({{2.0 * std::log(2.0), 0.0}, {-2.0, -4.0}});
    CHECK(t2.diag[0] == doctest::Approx(1.0));
    CHECK(t2.diag[1] == doctest::Approx(2.0));
    CHECK(t2.off[0] == doctest::Approx(1.0));

    RandomStream rs(2);
    for (int trial = 0; trial < 20; ++trial) {
        FlaschkaState s;
        for (int i = 0; i < 5; ++i) {
            s.x.push_back(3.0 * rs.gauss());
            s.y.push_back(3.0 * rs.gauss());
        }
        TridiagonalMatrix t = flaschka(s);
        for (double b : t.off) CHECK(b > 0.0);
    }

    CHECK_THROWS_AS(flaschka({{2000.0, 0.0}, {0.0, 0.0}}), DomainError);
}

TEST_CASE("inverse_flaschka: gauge-fixed round trip") {
    FlaschkaState s0 = inverse_flaschka({{0.0, 0.0}, {0.5}});
    CHECK(s0.y[0] == 0.0);
    CHECK(s0.y[1] == 0.0);
    CHECK(s0.x[0] == doctest::Approx(0.0));
    CHECK(s0.x[1] == doctest::Approx(0.0));

    RandomStream rs(3);
    for (int trial = 0; trial < 20; ++trial) {
        TridiagonalMatrix t = testutil::random_positive_tridiagonal(6, rs);
        TridiagonalMatrix back = flaschka(inverse_flaschka(t));
        CHECK(testutil::max_abs_diff(back.diag, t.diag) < 1e-12);
        CHECK(testutil::max_abs_diff(back.off, t.off) < 1e-12);
        // gauge: positions sum to zero
        FlaschkaState s = inverse_flaschka(t);
        double sum = 0.0;
        for (double v : s.x) sum += v;
        CHECK(std::fabs(sum) < 1e-12);
    }

    CHECK_THROWS_AS(inverse_flaschka({{1.0, 1.0}, {0.0}}), DomainError);
}

TEST_CASE("lax_rhs: diagonal fixed point, zero trace, hand 2x2") {
    SymmetricMatrix d = SymmetricMatrix::diagonal({1.0, -2.0, 0.5});
    CHECK(frobenius_norm(lax_rhs(d)) == 0.0);

    RandomStream rs(4);
    for (int trial = 0; trial < 10; ++trial) {
        SymmetricMatrix m = testutil::random_symmetric(6, rs);
        SymmetricMatrix r = lax_rhs(m);
        const double scale = frobenius_norm(m);
        CHECK(std::fabs(trace(r)) <= 1e-12 * scale * scale);
    }

    // a = (0,0), b = 1: d(a1)/dt = 2 b^2 = 2, d(b)/dt = b (a2 - a1) = 0
    SymmetricMatrix m2 = TridiagonalMatrix{{0.0, 0.0}, {1.0}}.to_symmetric();
    SymmetricMatrix r2 = lax_rhs(m2);
    CHECK(r2(0, 0) == doctest::Approx(2.0));
    CHECK(r2(1, 1) == doctest::Approx(-2.0));
    CHECK(r2(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("g_flow: t = 0 returns M0, diagonal matrices are fixed points") {
    RandomStream rs(5);
    SymmetricMatrix m = testutil::random_symmetric(5, rs);
    FlowSpec still;
    still.t = 0.0;
    CHECK(sym_diff_norm(g_flow(m, still), m) == 0.0);

    SymmetricMatrix d = SymmetricMatrix::diagonal({2.0, -1.0, 0.25, 4.0});
    FlowSpec spec;
    spec.t = 3.7;
    CHECK(sym_diff_norm(g_flow(d, spec), d) < 1e-13);
}

TEST_CASE("g_flow (Toda) matches the independent RK4 integration") {
    // 2x2 Flaschka example: a=(0,0), b=1, eigenvalues +-1
    SymmetricMatrix m0 = TridiagonalMatrix{{0.0, 0.0}, {1.0}}.to_symmetric();
    FlowSpec spec;
    spec.t = 5.0;
    SymmetricMatrix mt = g_flow(m0, spec);
    CHECK(std::fabs(mt(0, 1)) < 1e-3);
    CHECK(mt(0, 0) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(mt(1, 1) == doctest::Approx(-1.0).epsilon(1e-3));
    SymmetricMatrix rk = toda_flow_rk4(m0, 5.0, 1e-3);
    CHECK(sym_diff_norm(mt, rk) < 1e-7);

    // dense case: n = 6, t = 1, dt = 1e-3 -> < 1e-8
    RandomStream rs(6);
    SymmetricMatrix m6 = testutil::random_symmetric(6, rs);
    FlowSpec one;
    one.t = 1.0;
    CHECK(sym_diff_norm(g_flow(m6, one), toda_flow_rk4(m6, 1.0, 1e-3)) < 1e-8);
}

TEST_CASE("toda_flow_rk4: spectrum drift below 1e-8 over t = 10 at n = 10") {
    RandomStream rs(7);
    SymmetricMatrix m = testutil::random_symmetric(10, rs);
    SymmetricMatrix mt = toda_flow_rk4(m, 10.0, 1e-3);
    Spectrum before = symmetric_eigen(m, false);
    Spectrum after = symmetric_eigen(mt, false);
    CHECK(testutil::max_abs_diff(before.values, after.values) < 1e-8);
}

TEST_CASE("toda_flow_rk4: fourth-order convergence against the factorization answer") {
    RandomStream rs(8);
    SymmetricMatrix m = testutil::random_symmetric(6, rs);
    FlowSpec spec;
    spec.t = 1.0;
    SymmetricMatrix exact = g_flow(m, spec);
    const double e_coarse = sym_diff_norm(toda_flow_rk4(m, 1.0, 2e-3), exact);
    const double e_fine = sym_diff_norm(toda_flow_rk4(m, 1.0, 1e-3), exact);
    const double ratio = e_coarse / e_fine;
    CHECK(ratio > 10.0);
    CHECK(ratio < 24.0);
}

TEST_CASE("g_flow with a tabulated g reproduces the identity flow") {
    RandomStream rs(29);
    SymmetricMatrix m = testutil::random_symmetric(5, rs);
    // tabulate g(x) = x on a range covering the spectrum
    std::vector<double> xs, ys;
    for (double x = -10.0; x <= 10.0 + 1e-9; x += 0.25) {
        xs.push_back(x);
        ys.push_back(x);
    }
    FlowSpec custom;
    custom.g = FlowFunction::Custom;
    custom.custom_g = scalar_tabulated(xs, ys);
    custom.t = 2.0;
    FlowSpec toda;
    toda.t = 2.0;
    CHECK(sym_diff_norm(g_flow(m, custom), g_flow(m, toda)) < 1e-10);

    FlowSpec empty;
    empty.g = FlowFunction::Custom;
    empty.t = 1.0;
    CHECK_THROWS_AS(g_flow(m, empty), ValidationError);
}

TEST_CASE("g_flow with rk4 integrator agrees with factorization for g = log") {
    RandomStream rs(19);
    SymmetricMatrix pd = testutil::random_positive_definite(5, rs);
    FlowSpec fact;
    fact.g = FlowFunction::Log;
    fact.t = 1.5;
    FlowSpec rk;
    rk.g = FlowFunction::Log;
    rk.t = 1.5;
    rk.integrator = FlowIntegrator::Rk4;
    rk.dt = 1e-3;
    CHECK(sym_diff_norm(g_flow(pd, fact), g_flow(pd, rk)) < 1e-8);
}

TEST_CASE("g_flow: isospectrality and H_T = tr(M^2)/2 conservation") {
    RandomStream rs(9);
    for (int trial = 0; trial < 5; ++trial) {
        SymmetricMatrix m = testutil::random_symmetric(8, rs);
        Spectrum s0 = symmetric_eigen(m, false);
        const double h0 = 0.5 * trace_of_square(m);
        const double scale = frobenius_norm(m);
        for (double t : {1.0, 5.0, 20.0}) {
            FlowSpec spec;
            spec.t = t;
            SymmetricMatrix mt = g_flow(m, spec);
            Spectrum st = symmetric_eigen(mt, false);
            CHECK(testutil::max_abs_diff(s0.values, st.values) < 1e-10 * scale);
            CHECK(std::fabs(0.5 * trace_of_square(mt) - h0) < 1e-10 * scale * scale);
        }
    }
}

TEST_CASE("g_flow sorts: Jacobi matrices converge to descending eigenvalue order") {
    RandomStream rs(10);
    TridiagonalMatrix t = testutil::random_positive_tridiagonal(5, rs);
    SymmetricMatrix m = t.to_symmetric();
    Spectrum s = symmetric_eigen(m, false);
    FlowSpec spec;
    spec.t = 60.0;
    SymmetricMatrix mt = g_flow(m, spec);
    for (int i = 0; i < 5; ++i)
        CHECK(mt(i, i) == doctest::Approx(s.values[4 - i]).epsilon(1e-6));
    CHECK(mt(0, 0) == doctest::Approx(s.values.back()).epsilon(1e-9)); // X11 -> lambda_max
}

TEST_CASE("qr_step: fixed points and convergence of iterates") {
    SymmetricMatrix d = SymmetricMatrix::diagonal({2.0, 1.0});
    SymmetricMatrix d1 = qr_step_symmetric(d);
    CHECK(sym_diff_norm(d1, d) < 1e-15);

    SymmetricMatrix swap(2);
    swap.set(0, 1, 1.0);
    SymmetricMatrix s1 = qr_step_symmetric(swap);
    CHECK(s1(0, 1) == doctest::Approx(1.0));
    CHECK(s1(0, 0) == doctest::Approx(0.0));

    SymmetricMatrix g(2);
    g.set(0, 0, 2.0);
    g.set(0, 1, 1.0);
    g.set(1, 1, 1.0);
    SymmetricMatrix g40 = qr_iterate(g, 40);
    const double s5 = std::sqrt(5.0);
    CHECK(std::fabs(g40(0, 1)) < 1e-10);
    CHECK(g40(0, 0) == doctest::Approx((3.0 + s5) / 2.0).epsilon(1e-8));
    CHECK(g40(1, 1) == doctest::Approx((3.0 - s5) / 2.0).epsilon(1e-8));
}

TEST_CASE("qr_step preserves tridiagonal structure and the spectrum") {
    RandomStream rs(11);
    TridiagonalMatrix t = testutil::random_positive_tridiagonal(6, rs);
    SymmetricMatrix m = t.to_symmetric();
    Spectrum s0 = symmetric_eigen(m, false);
    SymmetricMatrix m1 = qr_step_symmetric(m);
    CHECK(is_tridiagonal(m1, 1e-12 * frobenius_norm(m)));
    Spectrum s1 = symmetric_eigen(m1, false);
    CHECK(testutil::max_abs_diff(s0.values, s1.values) < 1e-12 * frobenius_norm(m));
}

TEST_CASE("stroboscope: QR iterates interpolated by the log-flow") {
    CHECK(stroboscope_check({{1.0, 2.0}, {0.0}}, 0) == 0.0);
    for (int k = 1; k <= 4; ++k) CHECK(stroboscope_check({{1.0, 2.0}, {0.0}}, k) < 1e-12);

    RandomStream rs(12);
    for (int trial = 0; trial < 10; ++trial) {
        TridiagonalMatrix t = testutil::random_positive_tridiagonal(8, rs);
        SymmetricMatrix m = t.to_symmetric();
        Spectrum s = symmetric_eigen(m, false);
        const double shift = std::max(0.0, -s.values.front()) + 0.5;
        for (int i = 0; i < 8; ++i) t.diag[i] += shift;
        const double scale = frobenius_norm(t.to_symmetric());
        for (int k = 1; k <= 5; ++k) CHECK(stroboscope_check(t, k) < 1e-8 * k * scale);
    }

    CHECK_THROWS_AS(stroboscope_check({{-1.0, 2.0}, {0.1}}, 1), DomainError);
}

TEST_CASE("chopped_spectrum: j = 0 is the ordinary spectrum") {
    RandomStream rs(13);
    SymmetricMatrix m = testutil::random_symmetric(4, rs);
    ChoppedSpectrum c = chopped_spectrum(m, 0);
    REQUIRE(!c.degenerate);
    REQUIRE(c.roots.size() == 4);
    Spectrum s = symmetric_eigen(m, false);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::fabs(c.roots[i].imag()) < 1e-8);
        CHECK(c.roots[i].real() == doctest::Approx(s.values[i]).epsilon(1e-8));
    }
}

TEST_CASE("chopped_spectrum: diagonal input is degenerate for j = 1") {
    SymmetricMatrix d = SymmetricMatrix::diagonal({1.0, 2.0, 3.0, 4.0});
    ChoppedSpectrum c = chopped_spectrum(d, 1);
    CHECK(c.degenerate);
}

TEST_CASE("chopped_spectrum: validation") {
    SymmetricMatrix m(4);
    CHECK_THROWS_AS(chopped_spectrum(m, 3), ValidationError);
    SymmetricMatrix big(9);
    CHECK_THROWS_AS(chopped_spectrum(big, 1), ValidationError);
}

TEST_CASE("chopped integrals are conserved along the full Toda flow") {
    RandomStream rs(14);
    SymmetricMatrix m = testutil::random_symmetric(4, rs);
    ChoppedSpectrum c0 = chopped_spectrum(m, 1);
    REQUIRE(!c0.degenerate);
    REQUIRE(c0.roots.size() == 2);
    const double trace0 = trace(m);
    for (double t : {0.5, 1.0}) {
        FlowSpec spec;
        spec.t = t;
        SymmetricMatrix mt = g_flow(m, spec);
        CHECK(trace(mt) == doctest::Approx(trace0).epsilon(1e-10));
        ChoppedSpectrum ct = chopped_spectrum(mt, 1);
        REQUIRE(!ct.degenerate);
        REQUIRE(ct.roots.size() == 2);
        const auto sum0 = c0.roots[0] + c0.roots[1];
        const auto sumt = ct.roots[0] + ct.roots[1];
        CHECK(std::abs(sumt - sum0) < 1e-6);
        // match roots pairwise (sorted by re, im)
        const double direct = std::max(std::abs(ct.roots[0] - c0.roots[0]),
                                       std::abs(ct.roots[1] - c0.roots[1]));
        const double swapped = std::max(std::abs(ct.roots[0] - c0.roots[1]),
                                        std::abs(ct.roots[1] - c0.roots[0]));
        CHECK(std::min(direct, swapped) < 1e-6);
    }
}
