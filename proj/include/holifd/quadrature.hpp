#pragma once

#include <vector>

namespace holifd {

/// Gauss-Legendre rule transplanted to the reference element [-1/2, 1/2].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point rule, exact for polynomials of degree 2n-1.
QuadRule gauss_legendre_element(int n);

}  // namespace holifd
