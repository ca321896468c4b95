#pragma once

#include <complex>
#include <vector>

namespace isospec {

/// Real polynomial, coefficients ascending: c[0] + c[1] z + ... + c[deg] z^deg.
struct Poly {
    std::vector<double> c;

    static Poly constant(double v) { return Poly{{v}}; }
    static Poly linear(double c0, double c1) { return Poly{{c0, c1}}; }

    /// Degree after trimming coefficients below `tol` (relative to the
    /// largest one); -1 for the (numerically) zero polynomial.
    int degree(double tol = 0.0) const;
    double eval(double z) const;
    std::complex<double> eval(std::complex<double> z) const;
    double max_abs_coeff() const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(double s, const Poly& a);

/// All complex roots via Durand-Kerner iteration with Newton polishing.
/// The polynomial is trimmed first; throws DomainError if it is constant.
std::vector<std::complex<double>> poly_roots(const Poly& p);

/// det of a square matrix of polynomials by sign-tracked Laplace expansion
/// along the first available row. Exponential in size; intended for n <= 8.
Poly poly_det(const std::vector<std::vector<Poly>>& a);

} // namespace isospec
