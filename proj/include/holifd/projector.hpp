#pragma once

#include <array>
#include <stdexcept>

#include "holifd/initial_field.hpp"
#include "holifd/subgrid.hpp"

namespace holifd {

/// The m projection vectors z_j, each supported on elements j-1, j, j+1,
/// assembled at a given state (state-independent when a = 0).
struct ProjectorSet {
    Grid grid;
    ModelParams params;
    GridState state;
    // pieces[j] = polynomials on elements j-1, j, j+1 (local xi per element)
    std::vector<std::array<Poly<double>, 3>> pieces;

    PiecewiseField<double> field(int j) const
    {
        PiecewiseField<double> f(grid);
        for (int s = -1; s <= 1; ++s) f.add_piece(j + s, pieces[grid.wrap(j)][s + 1]);
        return f;
    }

    /// Pointwise sum over j of z_j at (element i, local xi).
    double partition_sum(int i, double xi) const
    {
        double acc = 0;
        for (int s = -1; s <= 1; ++s) acc += pieces[grid.wrap(i - s)][s + 1].eval(xi);
        return acc;
    }
};

/// Piece of z_j on element j+s, s in {-1, 0, 1}.
Poly<double> projector_piece(const Grid& g, const GridState& u, int j, int s, const ModelParams& p);

ProjectorSet projection_vectors(const Grid& g, const GridState& u, const ModelParams& p);

/// Leading-order, mass-conservative element average of the initial field.
GridState element_average(const InitialField& u0, const Grid& g);

/// Linear-diffusion projection u_j(0) = <z_j, u0>; requires a = 0.  gamma is
/// honoured as configured.
GridState project_linear(const InitialField& u0, const Grid& g, const ModelParams& p);

struct FixedPointConfig {
    double tol = 1e-12;
    int max_iterations = 50;
};

struct ProjectionError : std::runtime_error {
    GridState last_iterate;
    double residual;
    ProjectionError(std::string msg, GridState last, double res)
        : std::runtime_error(std::move(msg)), last_iterate(std::move(last)), residual(res)
    {
    }
};

/// Full nonlinear projection: fixed point of the orthogonality conditions
/// <z_j(u), u0 - v(u)> = 0, iterated from the element-average seed.
GridState project(const InitialField& u0, const Grid& g, const ModelParams& p, const FixedPointConfig& cfg = {});

/// Closed-form point-release initial condition; requires a = 0, gamma = 1.
GridState point_release_ic(const Grid& g, int k, double eta, double w, const ModelParams& p);

/// Exact rational weights of the point release: h u_j for j = k-1, k, k+1.
std::array<Rational, 3> point_release_weights_exact(const Rational& eta);

}  // namespace holifd
