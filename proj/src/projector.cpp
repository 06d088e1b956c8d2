#include "holifd/projector.hpp"

#include <cmath>

#include "holifd/quadrature.hpp"

namespace holifd {

Poly<double> projector_piece(const Grid& g, const GridState& u, int j, int s, const ModelParams& p)
{
    if (static_cast<int>(u.size()) != g.m)
        throw std::invalid_argument("projector_piece: state length does not match grid");
    if (s < -1 || s > 1) throw std::invalid_argument("projector_piece: offset outside the 3-element stencil");
    const double a = p.a, gm = p.gamma, h = p.h;
    const double um = u[g.wrap(j - 1)], u0 = u[g.wrap(j)], up = u[g.wrap(j + 1)];
    const double hag = h * a * gm / 48;
    const double h2a2g = h * h * a * a * gm / 384;
    std::array<double, 4> c{0, 0, 0, 0};
    if (s == 0) {
        c[0] = 1 - h * h * a * a * u0 * u0 / 16;
        c[0] += gm / 6.0;
        c[2] += -gm;
        c[0] += hag * (up - um);
        c[1] += -hag * 12 * u0;
        c[3] += hag * 16 * u0;
        c[0] += h2a2g * (8 * u0 * u0 + 4 * u0 * (up + um) + 2 * (up * up + um * um));
        c[2] += h2a2g * 24 * u0 * u0;
    } else if (s == -1) {
        c[0] += gm * (-1.0 / 12);
        c[1] += gm * 0.5;
        c[2] += gm * 0.5;
        c[0] += hag * (u0 - 3 * um);
        c[1] += hag * 6 * um;
        c[3] += -hag * 8 * um;
        c[0] += h2a2g * (3 * u0 * u0 + 4 * u0 * um - 5 * um * um);
        c[2] += -h2a2g * 12 * um * um;
        c[3] += -h2a2g * 16 * um * um;
    } else {  // s == +1
        c[0] += gm * (-1.0 / 12);
        c[1] += -gm * 0.5;
        c[2] += gm * 0.5;
        c[0] += hag * (-u0 + 3 * up);
        c[1] += hag * 6 * up;
        c[3] += -hag * 8 * up;
        c[0] += h2a2g * (3 * u0 * u0 + 4 * u0 * up - 5 * up * up);
        c[2] += -h2a2g * 12 * up * up;
        c[3] += h2a2g * 16 * up * up;
    }
    return Poly<double>(std::vector<double>(c.begin(), c.end()));
}

ProjectorSet projection_vectors(const Grid& g, const GridState& u, const ModelParams& p)
{
    ProjectorSet set;
    set.grid = g;
    set.params = p;
    set.state = u;
    set.pieces.resize(g.m);
    for (int j = 0; j < g.m; ++j)
        for (int s = -1; s <= 1; ++s) set.pieces[j][s + 1] = projector_piece(g, u, j, s, p);
    return set;
}

GridState element_average(const InitialField& u0, const Grid& g)
{
    GridState out(g.m, 0.0);
    switch (u0.kind()) {
        case InitialField::Kind::points:
            for (const auto& pm : u0.masses()) out[g.wrap(pm.k)] += pm.w / g.h;
            break;
        case InitialField::Kind::piecewise:
            for (int j = 0; j < g.m; ++j) out[j] = u0.piecewise_field().integrate_element(j);
            break;
        case InitialField::Kind::analytic: {
            QuadRule q = gauss_legendre_element(u0.quad_order());
            for (int j = 0; j < g.m; ++j) {
                double acc = 0;
                for (std::size_t i = 0; i < q.nodes.size(); ++i)
                    acc += q.weights[i] * u0.value(g.center(j) + g.h * q.nodes[i], g);
                if (!std::isfinite(acc)) throw std::runtime_error("element_average: quadrature failure");
                out[j] = acc;
            }
            break;
        }
    }
    return out;
}

GridState project_linear(const InitialField& u0, const Grid& g, const ModelParams& p)
{
    if (p.a != 0) throw std::invalid_argument("project_linear: requires a = 0");
    GridState zero(g.m, 0.0);
    GridState out(g.m, 0.0);
    for (int j = 0; j < g.m; ++j) {
        PiecewiseField<double> zj(g);
        for (int s = -1; s <= 1; ++s) zj.add_piece(j + s, projector_piece(g, zero, j, s, p));
        out[j] = inner_product(zj, u0);
    }
    return out;
}

GridState project(const InitialField& u0, const Grid& g, const ModelParams& p, const FixedPointConfig& cfg)
{
    GridState u = element_average(u0, g);
    double residual = 0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        PiecewiseField<double> v = subgrid_field(g, u, p);
        residual = 0;
        GridState next = u;
        for (int j = 0; j < g.m; ++j) {
            PiecewiseField<double> zj(g);
            for (int s = -1; s <= 1; ++s) zj.add_piece(j + s, projector_piece(g, u, j, s, p));
            double r = inner_product(zj, u0) - inner_product(zj, v);
            next[j] += r;
            residual = std::max(residual, std::abs(r));
        }
        u = std::move(next);
        if (residual <= cfg.tol) return u;
    }
    throw ProjectionError("project: fixed point not converged after " + std::to_string(cfg.max_iterations) +
                              " iterations (residual " + std::to_string(residual) +
                              "); a*h may be too large for the truncated series",
                          u, residual);
}

std::array<Rational, 3> point_release_weights_exact(const Rational& eta)
{
    Rational eta2 = eta * eta;
    return {Rational(-1, 12) - eta / 2 + eta2 / 2,   // element k-1
            Rational(7, 6) - eta2,                   // element k
            Rational(-1, 12) + eta / 2 + eta2 / 2};  // element k+1
}

GridState point_release_ic(const Grid& g, int k, double eta, double w, const ModelParams& p)
{
    if (p.a != 0 || p.gamma != 1)
        throw std::invalid_argument("point_release_ic: closed form requires a = 0, gamma = 1");
    if (eta < -0.5 || eta > 0.5) throw std::invalid_argument("point_release_ic: eta outside [-1/2, 1/2]");
    GridState u(g.m, 0.0);
    u[g.wrap(k - 1)] += w * (-1.0 / 12 - eta / 2 + eta * eta / 2) / g.h;
    u[g.wrap(k)] += w * (7.0 / 6 - eta * eta) / g.h;
    u[g.wrap(k + 1)] += w * (-1.0 / 12 + eta / 2 + eta * eta / 2) / g.h;
    return u;
}

}  // namespace holifd
