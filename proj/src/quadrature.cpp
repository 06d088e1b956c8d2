#include "holifd/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holifd {

// Nodes by Newton iteration on P_n with the Chebyshev-like initial guess;
// weights w = 2 / ((1-x^2) P_n'(x)^2).
QuadRule gauss_legendre_element(int n)
{
    if (n < 1 || n > 128) throw std::invalid_argument("gauss_legendre_element: order out of range");
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = 0.5 * x;                                  // [-1,1] -> [-1/2,1/2]
        rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);        // half of the [-1,1] weight
    }
    return rule;
}

}  // namespace holifd
