#pragma once

namespace isospec {

/// Airy function Ai(x), absolute error <= 1e-10 on the supported range
/// |x| <= 15. Maclaurin series for |x| <= 5.5, stitched to the standard
/// asymptotic expansions beyond (exponential on the right, oscillatory on
/// the left). Throws Error outside the supported range.
double airy_ai(double x);

/// Derivative Ai'(x), same construction and range.
double airy_ai_prime(double x);

namespace detail {

// Unchecked evaluations: valid for all x >= -15 (the right asymptotic
// series only improves with x). Used by the Airy-kernel determinant, whose
// truncated interval [t, t+12] can exceed +15 while the kernel is already
// negligible there.
double airy_ai_any(double x);
double airy_ai_prime_any(double x);

} // namespace detail

} // namespace isospec
