#include "holifd/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holifd {

namespace {

void fine_rhs(const std::vector<double>& u, double a, double dx, std::vector<double>& du)
{
    int n = static_cast<int>(u.size());
    for (int i = 0; i < n; ++i) {
        int im = (i == 0) ? n - 1 : i - 1;
        int ip = (i == n - 1) ? 0 : i + 1;
        double diff = (u[ip] - 2 * u[i] + u[im]) / (dx * dx);
        double adv = a * (u[ip] * u[ip] - u[im] * u[im]) / (4 * dx);  // (u^2/2)_x central
        du[i] = diff - adv;
    }
}

}  // namespace

FineSolution reference_solve(const InitialField& u0, double a, const Grid& g, const ReferenceConfig& cfg)
{
    FineSolution sol;
    int N = cfg.N > 0 ? cfg.N : 64 * g.m;
    if (N % g.m != 0) throw std::invalid_argument("reference_solve: N must be a multiple of m");
    if ((N / g.m) % 2 != 0) throw std::invalid_argument("reference_solve: N/m must be even");
    sol.fg = FineGrid{N, g.length(), g.origin};
    double dx = sol.fg.dx();
    double dt = cfg.dt > 0 ? cfg.dt : dx * dx / 4;
    if (dt > dx * dx / 2 * (1 + 1e-12))
        throw std::invalid_argument("reference_solve: dt violates the diffusive CFL bound dx^2/2");

    std::vector<double> u(N);
    InitialField field = u0.kind() == InitialField::Kind::points ? mollify_points(u0, g, g.h / 8) : u0;
    double umax = 0;
    for (int i = 0; i < N; ++i) {
        u[i] = field.value(sol.fg.x(i), g);
        umax = std::max(umax, std::abs(u[i]));
    }
    if (std::abs(a) * umax * dt / dx > 1.0)
        throw std::invalid_argument("reference_solve: dt violates the advective CFL bound");

    long nsteps = static_cast<long>(std::ceil(cfg.T / dt - 1e-9));
    sol.times.push_back(0.0);
    sol.snapshots.push_back(u);

    std::vector<double> k1(N), k2(N), k3(N), k4(N), tmp(N);
    double t = 0;
    for (long step = 0; step < nsteps; ++step) {
        double h = std::min(dt, cfg.T - t);
        fine_rhs(u, a, dx, k1);
        for (int i = 0; i < N; ++i) tmp[i] = u[i] + 0.5 * h * k1[i];
        fine_rhs(tmp, a, dx, k2);
        for (int i = 0; i < N; ++i) tmp[i] = u[i] + 0.5 * h * k2[i];
        fine_rhs(tmp, a, dx, k3);
        for (int i = 0; i < N; ++i) tmp[i] = u[i] + h * k3[i];
        fine_rhs(tmp, a, dx, k4);
        for (int i = 0; i < N; ++i) u[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        t = (step + 1 < nsteps) ? t + h : cfg.T;
        for (int i = 0; i < N; ++i)
            if (!std::isfinite(u[i]))
                throw std::runtime_error("reference_solve: blow-up at t = " + std::to_string(t));
        bool keep = (cfg.snapshot_stride > 0 && (step + 1) % cfg.snapshot_stride == 0) || step + 1 == nsteps;
        if (keep) {
            sol.times.push_back(t);
            sol.snapshots.push_back(u);
        }
    }
    return sol;
}

GridState restrict_snapshot(const FineSolution& f, int snapshot, const Grid& g, RestrictMode mode)
{
    const std::vector<double>& u = f.snapshots.at(snapshot);
    int N = f.fg.N;
    int stride = N / g.m;
    GridState out(g.m, 0.0);
    if (mode == RestrictMode::sample) {
        for (int j = 0; j < g.m; ++j) out[j] = u[j * stride];
        return out;
    }
    // element j spans fine indices [j*stride - stride/2, j*stride + stride/2]
    int hw = stride / 2;
    for (int j = 0; j < g.m; ++j) {
        double acc = 0.5 * (u[((j * stride - hw) % N + N) % N] + u[(j * stride + hw) % N]);
        for (int q = -hw + 1; q < hw; ++q) acc += u[((j * stride + q) % N + N) % N];
        out[j] = acc * f.fg.dx() / g.h;
    }
    return out;
}

}  // namespace holifd
