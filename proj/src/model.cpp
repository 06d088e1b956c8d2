#include "holifd/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holifd {

GridState holistic_rhs(const Grid& g, const GridState& u, const ModelParams& p)
{
    if (static_cast<int>(u.size()) != g.m)
        throw std::invalid_argument("holistic_rhs: state length does not match grid");
    const double h = p.h, a = p.a;
    GridState du(u.size());
    for (int j = 0; j < g.m; ++j) {
        double um = u[g.wrap(j - 1)], u0 = u[j], up = u[g.wrap(j + 1)];
        double d2u = up - 2 * u0 + um;
        double mud_u2 = 0.5 * (up * up - um * um);
        double d2u3 = up * up * up - 2 * u0 * u0 * u0 + um * um * um;
        du[j] = d2u / (h * h) - (a / (2 * h)) * mud_u2 + (a * a / 16) * (d2u3 - u0 * u0 * d2u);
    }
    return du;
}

Trajectory integrate(const Grid& g, const GridState& u0, const ModelParams& p, const IntegrationConfig& cfg,
                     const Observer& observer)
{
    if (!(cfg.dt > 0)) throw std::invalid_argument("integrate: need dt > 0");
    if (cfg.T < 0) throw std::invalid_argument("integrate: need T >= 0");
    double cap = p.h * p.h / 4;  // diffusive CFL with margin 2 under RK4
    if (cfg.dt > cap * (1 + 1e-12) && !cfg.allow_unstable)
        throw std::invalid_argument("integrate: dt = " + std::to_string(cfg.dt) + " exceeds stability cap h^2/4 = " +
                                    std::to_string(cap) + " (set allow_unstable to override)");

    auto check_finite = [&](const GridState& u, double t) {
        for (double v : u)
            if (!std::isfinite(v))
                throw std::runtime_error("integrate: non-finite state at t = " + std::to_string(t));
    };

    Trajectory traj;
    GridState u = u0;
    check_finite(u, 0.0);
    traj.times.push_back(0.0);
    traj.states.push_back(u);
    if (observer) observer(0.0, u);

    long nsteps = static_cast<long>(std::ceil(cfg.T / cfg.dt - 1e-9));
    GridState k1, k2, k3, k4, tmp(u.size());
    double t = 0;
    for (long step = 0; step < nsteps; ++step) {
        double dt = std::min(cfg.dt, cfg.T - t);
        k1 = holistic_rhs(g, u, p);
        for (std::size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
        k2 = holistic_rhs(g, tmp, p);
        for (std::size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
        k3 = holistic_rhs(g, tmp, p);
        for (std::size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + dt * k3[i];
        k4 = holistic_rhs(g, tmp, p);
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t = (step + 1 < nsteps) ? t + dt : cfg.T;
        check_finite(u, t);
        if (observer) observer(t, u);
        if ((step + 1) % cfg.snapshot_stride == 0 || step + 1 == nsteps) {
            traj.times.push_back(t);
            traj.states.push_back(u);
        }
    }
    return traj;
}

}  // namespace holifd
