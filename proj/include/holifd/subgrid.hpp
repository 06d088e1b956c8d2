#pragma once

#include <array>
#include <stdexcept>

#include "holifd/grid.hpp"
#include "holifd/piecewise.hpp"

namespace holifd {

/// Advection coefficient a, element-coupling parameter gamma in [0, 1], and
/// element width h.
struct ModelParams {
    double a = 0;
    double gamma = 1;
    double h = 1;

    ModelParams() = default;
    ModelParams(double a_, double gamma_, double h_) : a(a_), gamma(gamma_), h(h_) { validate(); }

    void validate() const
    {
        if (gamma < 0 || gamma > 1) throw std::invalid_argument("ModelParams: gamma outside [0, 1]");
        if (!(h > 0)) throw std::invalid_argument("ModelParams: need h > 0");
    }
};

namespace detail {

/// Forward-mode dual number carrying a single directional derivative.
struct Jet {
    double v = 0;
    double d = 0;
    Jet() = default;
    Jet(double v_) : v(v_) {}
    Jet(double v_, double d_) : v(v_), d(d_) {}
    friend Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d}; }
    friend Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d}; }
    friend Jet operator*(Jet a, Jet b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
    friend Jet operator*(double s, Jet a) { return {s * a.v, s * a.d}; }
};

/// Coefficients (xi^0 .. xi^4) of the subgrid field's piece on one element,
/// as a function of the three neighbouring amplitudes.  T is double for
/// plain evaluation and Jet for tangent vectors.
template <class T>
std::array<T, 5> subgrid_piece_coeffs(const T& um, const T& u0, const T& up, const ModelParams& p)
{
    const double a = p.a, g = p.gamma, h = p.h;
    const T u0sq = u0 * u0;
    const T u0cu = u0sq * u0;
    const T mud_u = 0.5 * (up - um);
    const T d2_u = up - 2.0 * u0 + um;
    const T mud_u2 = 0.5 * (up * up - um * um);
    const T d2_u2 = up * up - 2.0 * u0sq + um * um;
    const T mud_u3 = 0.5 * (up * up * up - um * um * um);
    const T d2_u3 = up * up * up - 2.0 * u0cu + um * um * um;

    std::array<T, 5> c{T(0), T(0), T(0), T(0), T(0)};
    c[0] = u0;
    c[1] = (a * h / 2) * u0sq;
    c[2] = (a * a * h * h / 4) * u0cu;

    c[1] = c[1] + g * mud_u;
    c[2] = c[2] + (g / 2) * d2_u;

    const double ahg = a * h * g;
    c[1] = c[1] + (-ahg / 8) * (u0 * d2_u + d2_u2 + 4.0 * u0sq);
    c[2] = c[2] + (ahg / 8) * (2.0 * (u0 * mud_u) - mud_u2) + (ahg / 3) * (u0 * d2_u);

    const double a2h2g = a * a * h * h * g;
    c[1] = c[1] + (a2h2g / 16) * (u0 * mud_u2 + mud_u3);
    c[2] = c[2] + (-3.0 * a2h2g / 32) * (3.0 * (u0sq * d2_u) + 2.0 * (u0 * d2_u) - d2_u3 + 8.0 * u0cu);
    c[3] = (a2h2g / 6) * (2.0 * (u0sq * mud_u) - u0 * mud_u2);
    c[4] = (5.0 * a2h2g / 24) * (u0sq * d2_u);
    return c;
}

}  // namespace detail

/// The subgrid field's polynomial piece on element j.
Poly<double> subgrid_piece(const Grid& g, const GridState& u, int j, const ModelParams& p);

/// The full subgrid field v(u, x) as a piecewise polynomial.
PiecewiseField<double> subgrid_field(const Grid& g, const GridState& u, const ModelParams& p);

/// Tangent vector e_j = dv/du_j, supported on elements j-1, j, j+1.
PiecewiseField<double> tangent_vector(const Grid& g, const GridState& u, int j, const ModelParams& p);

struct SampledField {
    std::vector<double> x;
    std::vector<double> v;
};

/// Dense evaluation of the subgrid field on a uniform xi-mesh.
SampledField reconstruct(const Grid& g, const GridState& u, const ModelParams& p, int samples_per_element);

}  // namespace holifd
