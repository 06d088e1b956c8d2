#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace holifd {

/// Periodic lattice of m elements of width h.  Element j occupies
/// [x_j - h/2, x_j + h/2) with x_j = origin + j h; all coordinates are
/// understood modulo the domain length L = m h.
struct Grid {
    int m = 0;
    double h = 0;
    double origin = 0;

    Grid() = default;
    Grid(int m_, double h_, double origin_ = 0.0) : m(m_), h(h_), origin(origin_)
    {
        if (m < 4) throw std::invalid_argument("Grid: need m >= 4");
        if (!(h > 0)) throw std::invalid_argument("Grid: need h > 0");
    }

    double length() const { return m * h; }

    /// Grid point x_j without periodic reduction.
    double center(long j) const { return origin + static_cast<double>(j) * h; }

    /// Reduces a signed element index into [0, m).
    int wrap(long j) const
    {
        long r = j % m;
        if (r < 0) r += m;
        return static_cast<int>(r);
    }

    /// Signed offset of element i from element k along the shorter arc,
    /// in [-m/2, m/2).
    int signed_offset(int i, int k) const
    {
        long d = (static_cast<long>(i) - k) % m;
        if (d < -m / 2) d += m;
        if (d >= m - m / 2) d -= m;
        return static_cast<int>(d);
    }

    /// Maps x to (element index, local coordinate xi in [-1/2, 1/2)).
    std::pair<int, double> locate(double x) const
    {
        if (!std::isfinite(x)) throw std::invalid_argument("Grid::locate: non-finite x");
        double t = (x - origin) / h;
        double jf = std::floor(t + 0.5);
        double xi = t - jf;
        if (xi >= 0.5) {  // guards rounding at the element edge
            jf += 1.0;
            xi -= 1.0;
        }
        if (xi < -0.5) {
            jf -= 1.0;
            xi += 1.0;
        }
        return {wrap(static_cast<long>(jf)), xi};
    }
};

/// The m model amplitudes u_j(t).
using GridState = std::vector<double>;

}  // namespace holifd
