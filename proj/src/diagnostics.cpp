#include "holifd/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "holifd/quadrature.hpp"

namespace holifd {

namespace {

/// (D + h xi)^p as a polynomial in xi.
Poly<double> displacement_power(double D, double h, int p)
{
    Poly<double> acc = Poly<double>::constant(1.0);
    Poly<double> lin{D, h};
    for (int q = 0; q < p; ++q) acc = acc * lin;
    return acc;
}

/// Moment weight of element i about element k.  The antipode of k is
/// equidistant both ways round, so the minimal-image displacement is
/// ambiguous there; the two images are averaged, which drops the odd
/// powers of the tie element.
Poly<double> moment_weight(const Grid& g, int i, int k, int p)
{
    int off = g.signed_offset(i, k);
    double D = g.h * off;
    if (g.m % 2 == 0 && 2 * std::abs(off) == g.m) {
        Poly<double> avg = (displacement_power(D, g.h, p) + displacement_power(-D, g.h, p)) * 0.5;
        return avg;
    }
    return displacement_power(D, g.h, p);
}

double slope_fit(const std::vector<double>& t, const std::vector<double>& y, double t_min)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_min) continue;
        sx += t[i];
        sy += y[i];
        sxx += t[i] * t[i];
        sxy += t[i] * y[i];
        ++n;
    }
    if (n < 2) throw std::invalid_argument("slope fit: fewer than two samples past t_min");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

MomentResult moments(const Grid& g, const GridState& u, const ModelParams& p, int k, int pmax)
{
    MomentResult res;
    res.m.assign(pmax + 1, 0.0);
    PiecewiseField<double> v = subgrid_field(g, u, p);

    double vmax = 0, vanti = 0;
    int anti = g.wrap(k + g.m / 2);
    for (const auto& [j, piece] : v.pieces) {
        for (int q = 0; q <= 8; ++q) {
            double val = std::abs(piece.eval(-0.5 + q / 8.0));
            vmax = std::max(vmax, val);
            if (j == anti) vanti = std::max(vanti, val);
        }
    }
    res.antipode_warning = vanti > 1e-8 * vmax;

    for (const auto& [j, piece] : v.pieces) {
        double D = g.h * g.signed_offset(j, k);
        for (int p_ = 0; p_ <= pmax; ++p_)
            res.m[p_] += g.h * (displacement_power(D, g.h, p_) * piece).integrate_element();
    }
    return res;
}

MomentReport moment_evolution(const Grid& g, const GridState& u0, const ModelParams& p, const IntegrationConfig& cfg,
                              int k, double fit_t_min)
{
    MomentReport rep;
    Observer obs = [&](double t, const GridState& u) {
        MomentResult mr = moments(g, u, p, k, 2);
        rep.t.push_back(t);
        rep.m0.push_back(mr.m[0]);
        rep.m1.push_back(mr.m[1]);
        rep.m2.push_back(mr.m[2]);
        rep.antipode_warning = rep.antipode_warning || mr.antipode_warning;
    };
    integrate(g, u0, p, cfg, obs);
    rep.dm2dt_slope = slope_fit(rep.t, rep.m2, fit_t_min);
    return rep;
}

ResidualResult pde_residual(const Grid& g, const GridState& u, const ModelParams& p, int samples_per_element)
{
    if (p.gamma != 1) throw std::invalid_argument("pde_residual: requires gamma = 1");
    if (samples_per_element < 1) throw std::invalid_argument("pde_residual: need at least one sample");
    GridState du = holistic_rhs(g, u, p);

    ResidualResult res;
    res.per_element.assign(g.m, 0.0);
    res.per_element_mean.assign(g.m, 0.0);
    using detail::Jet;
    for (int i = 0; i < g.m; ++i) {
        double um = u[g.wrap(i - 1)], u0 = u[i], up = u[g.wrap(i + 1)];
        // v_t on element i: sum over the three neighbour derivatives
        Poly<double> vt;
        for (int s = -1; s <= 1; ++s) {
            Jet jm(um, s == -1 ? 1.0 : 0.0);
            Jet j0(u0, s == 0 ? 1.0 : 0.0);
            Jet jp(up, s == 1 ? 1.0 : 0.0);
            auto c = detail::subgrid_piece_coeffs<Jet>(jm, j0, jp, p);
            std::vector<double> dcoeffs(c.size());
            for (std::size_t q = 0; q < c.size(); ++q) dcoeffs[q] = c[q].d;
            vt += Poly<double>(std::move(dcoeffs)) * du[g.wrap(i + s)];
        }
        Poly<double> v = subgrid_piece(g, u, i, p);
        Poly<double> vxx = v.derivative().derivative() * (1.0 / (p.h * p.h));
        Poly<double> vx = v.derivative() * (1.0 / p.h);
        Poly<double> r = vt - vxx + (v * vx) * p.a;
        double sup = 0;
        for (int q = 0; q < samples_per_element; ++q) {
            double xi = -0.5 + (q + 0.5) / samples_per_element;
            sup = std::max(sup, std::abs(r.eval(xi)));
        }
        res.per_element[i] = sup;
        res.per_element_mean[i] = r.integrate_element();
        res.sup = std::max(res.sup, sup);
    }
    return res;
}

std::vector<double> initial_field_moments(const InitialField& u0, const Grid& g, int k, int pmax)
{
    std::vector<double> out(pmax + 1, 0.0);
    switch (u0.kind()) {
        case InitialField::Kind::points:
            for (const auto& pm : u0.masses()) {
                double D = g.h * g.signed_offset(g.wrap(pm.k), k) + g.h * pm.eta;
                for (int p = 0; p <= pmax; ++p) out[p] += pm.w * std::pow(D, p);
            }
            break;
        case InitialField::Kind::piecewise:
            for (const auto& [j, piece] : u0.piecewise_field().pieces) {
                double D = g.h * g.signed_offset(j, k);
                for (int p = 0; p <= pmax; ++p)
                    out[p] += g.h * (displacement_power(D, g.h, p) * piece).integrate_element();
            }
            break;
        case InitialField::Kind::analytic: {
            QuadRule q = gauss_legendre_element(u0.quad_order());
            for (int j = 0; j < g.m; ++j) {
                double D = g.h * g.signed_offset(j, k);
                for (std::size_t i = 0; i < q.nodes.size(); ++i) {
                    double val = u0.value(g.center(j) + g.h * q.nodes[i], g);
                    double d = D + g.h * q.nodes[i];
                    double dp = 1;
                    for (int p = 0; p <= pmax; ++p) {
                        out[p] += g.h * q.weights[i] * val * dp;
                        dp *= d;
                    }
                }
            }
            break;
        }
    }
    return out;
}

std::vector<StrategyResult> compare_ic_strategies(const InitialField& u0_in, const Grid& g, const ModelParams& p,
                                                  const CompareConfig& cfg)
{
    InitialField u0 = u0_in.kind() == InitialField::Kind::points
                          ? mollify_points(u0_in, g, cfg.mollify_sigma_factor * g.h)
                          : u0_in;
    if (u0.kind() == InitialField::Kind::analytic && u0.quad_order() < cfg.quad_order)
        u0 = InitialField::analytic([u0, &g](double x) { return u0.value(x, g); }, cfg.quad_order);

    std::vector<double> truth = initial_field_moments(u0, g, cfg.k_ref, 2);

    ReferenceConfig rc;
    rc.N = cfg.fine_multiple * g.m;
    rc.T = cfg.T;
    rc.dt = cfg.oracle_dt;
    FineSolution oracle = reference_solve(u0, p.a, g, rc);
    const std::vector<double>& fine_final = oracle.snapshots.back();

    IntegrationConfig ic;
    ic.dt = cfg.model_dt > 0 ? cfg.model_dt : g.h * g.h / 8;
    ic.T = cfg.T;
    ic.snapshot_stride = 1 << 30;  // final state only

    std::vector<StrategyResult> rows;
    for (const std::string& strategy : {"naive", "element_average", "holistic"}) {
        GridState uinit;
        if (strategy == "naive") {
            uinit.resize(g.m);
            for (int j = 0; j < g.m; ++j) uinit[j] = u0.value(g.center(j), g);
        } else if (strategy == "element_average") {
            uinit = element_average(u0, g);
        } else {
            uinit = project(u0, g, p);
        }

        StrategyResult row;
        row.strategy = strategy;
        row.m = g.m;
        row.h = g.h;
        MomentResult m0m = moments(g, uinit, p, cfg.k_ref, 2);
        row.m0_err = std::abs(m0m.m[0] - truth[0]);
        row.m1_err = std::abs(m0m.m[1] - truth[1]);
        row.m2_err = std::abs(m0m.m[2] - truth[2]);

        Trajectory traj = integrate(g, uinit, p, ic);
        PiecewiseField<double> v = subgrid_field(g, traj.states.back(), p);
        double acc = 0;
        for (int i = 0; i < oracle.fg.N; ++i) {
            auto [j, xi] = g.locate(oracle.fg.x(i));
            double d = v.piece_value(j, xi) - fine_final[i];
            acc += d * d;
        }
        row.l2_error = std::sqrt(acc * oracle.fg.dx());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace holifd
