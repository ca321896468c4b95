#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "isospec/errors.hpp"
#include "isospec/matrix.hpp"
#include "isospec/rng.hpp"
#include "test_util.hpp"

using namespace isospec;

TEST_CASE("symmetrized matrices are bitwise symmetric") {
    RandomStream rs(42);
    SymmetricMatrix m = testutil::random_symmetric(7, rs);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) CHECK(m(i, j) == m(j, i));
}

TEST_CASE("checked rejects asymmetric input") {
    Matrix a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 2.0;
    CHECK_THROWS_AS(SymmetricMatrix::checked(a, 1e-12), DomainError);
}

TEST_CASE("matrix product and AtB agree with hand computation") {
    Matrix a(2, 2), b(2, 2);
    a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
    b(0, 0) = 5; b(0, 1) = 6; b(1, 0) = 7; b(1, 1) = 8;
    Matrix c = a * b;
    CHECK(c(0, 0) == doctest::Approx(19));
    CHECK(c(0, 1) == doctest::Approx(22));
    CHECK(c(1, 0) == doctest::Approx(43));
    CHECK(c(1, 1) == doctest::Approx(50));
    Matrix d = multiply_at_b(a, b);
    Matrix d2 = transpose(a) * b;
    CHECK(max_abs(d - d2) == doctest::Approx(0.0));
}

TEST_CASE("tridiagonal round trip") {
    TridiagonalMatrix t{{1.0, 2.0, 3.0}, {0.5, -0.25}};
    SymmetricMatrix s = t.to_symmetric();
    CHECK(is_tridiagonal(s, 0.0));
    TridiagonalMatrix back = extract_tridiagonal(s);
    CHECK(back.diag == t.diag);
    CHECK(back.off == t.off);
}

TEST_CASE("hermitian embedding is symmetric and doubles the dimension") {
    HermitianMatrix h(2);
    h.set(0, 0, {1.0, 0.0});
    h.set(1, 1, {1.0, 0.0});
    h.set(0, 1, {0.0, 1.0}); // i
    SymmetricMatrix e = h.embed_real();
    CHECK(e.n() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(e(i, j) == e(j, i));
    // upper-right block must be -Im = -B
    CHECK(e(0, 3) == doctest::Approx(-1.0));
    CHECK(e(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("conjugation by a rotation preserves trace and Frobenius norm") {
    RandomStream rs(7);
    SymmetricMatrix m = testutil::random_symmetric(4, rs);
    const double c = std::cos(0.3), s = std::sin(0.3);
    Matrix q = Matrix::identity(4);
    q(0, 0) = c; q(0, 1) = -s; q(1, 0) = s; q(1, 1) = c;
    SymmetricMatrix r = conjugate_by_orthogonal(m, q);
    CHECK(trace(r) == doctest::Approx(trace(m)).epsilon(1e-12));
    CHECK(frobenius_norm(r) == doctest::Approx(frobenius_norm(m)).epsilon(1e-12));
}

TEST_CASE("csv round trip is exact") {
    RandomStream rs(3);
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = rs.gauss();
    const std::string path = "test_matrix_roundtrip.csv";
    write_matrix_csv(path, m);
    Matrix back = read_matrix_csv(path);
    CHECK(max_abs(m - back) == 0.0);
    std::remove(path.c_str());
}
