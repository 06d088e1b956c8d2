#pragma once

#include <vector>

#include "holifd/grid.hpp"
#include "holifd/initial_field.hpp"

namespace holifd {

/// Fine lattice aligned with the element grid: N = multiple * m points,
/// x_i = origin + i dx, so grid points and element boundaries are fine points.
struct FineGrid {
    int N = 0;
    double L = 0;
    double origin = 0;

    double dx() const { return L / N; }
    double x(int i) const { return origin + i * dx(); }
};

struct FineSolution {
    FineGrid fg;
    std::vector<double> times;
    std::vector<std::vector<double>> snapshots;
};

struct ReferenceConfig {
    int N = 0;            // defaults to 64 m when zero
    double T = 1.0;
    double dt = 0;        // defaults to dx^2/4 when zero
    int snapshot_stride = 0;  // 0: keep first and last only
};

/// Conventional second-order scheme for u_t + a u u_x = u_xx on the fine
/// lattice: central u_xx, conservative central (u^2/2)_x, RK4 in time,
/// periodic.  Deliberately free of the holistic terms.
FineSolution reference_solve(const InitialField& u0, double a, const Grid& g, const ReferenceConfig& cfg);

enum class RestrictMode { sample, element_average };

/// Grid-state view of one fine snapshot: sampling at x_j or exact trapezoidal
/// element averages.
GridState restrict_snapshot(const FineSolution& f, int snapshot, const Grid& g, RestrictMode mode);

}  // namespace holifd
