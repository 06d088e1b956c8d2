#pragma once

#include <functional>
#include <vector>

#include "holifd/grid.hpp"
#include "holifd/subgrid.hpp"

namespace holifd {

/// du_j/dt = delta^2 u_j / h^2 - (a/2h) mu delta u_j^2
///           + (a^2/16)(delta^2 u_j^3 - u_j^2 delta^2 u_j),
/// with periodic indexing.
GridState holistic_rhs(const Grid& g, const GridState& u, const ModelParams& p);

struct IntegrationConfig {
    double dt = 0;
    double T = 0;
    bool allow_unstable = false;  // overrides the dt <= h^2/4 cap
    int snapshot_stride = 1;      // trajectory keeps every stride-th step
};

struct Trajectory {
    std::vector<double> times;
    std::vector<GridState> states;
};

using Observer = std::function<void(double, const GridState&)>;

/// Classical fixed-step RK4.  The observer is called at t = 0 and after each
/// accepted step.  Throws on non-finite states (blow-up) and on time steps
/// beyond the diffusive stability cap unless overridden.
Trajectory integrate(const Grid& g, const GridState& u0, const ModelParams& p, const IntegrationConfig& cfg,
                     const Observer& observer = {});

}  // namespace holifd
