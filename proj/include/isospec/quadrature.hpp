#pragma once

#include <vector>

namespace isospec {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre nodes and weights on [a, b] (Newton iteration on the
/// Legendre recurrence). Exact for polynomials up to degree 2m-1.
QuadratureRule gauss_legendre(int m, double a, double b);

} // namespace isospec
