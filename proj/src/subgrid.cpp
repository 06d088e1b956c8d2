#include "holifd/subgrid.hpp"

namespace holifd {

static void check_state(const Grid& g, const GridState& u)
{
    if (static_cast<int>(u.size()) != g.m)
        throw std::invalid_argument("GridState length does not match grid");
}

Poly<double> subgrid_piece(const Grid& g, const GridState& u, int j, const ModelParams& p)
{
    check_state(g, u);
    int jm = g.wrap(j - 1), j0 = g.wrap(j), jp = g.wrap(j + 1);
    auto c = detail::subgrid_piece_coeffs<double>(u[jm], u[j0], u[jp], p);
    return Poly<double>(std::vector<double>(c.begin(), c.end()));
}

PiecewiseField<double> subgrid_field(const Grid& g, const GridState& u, const ModelParams& p)
{
    PiecewiseField<double> f(g);
    for (int j = 0; j < g.m; ++j) f.set_piece(j, subgrid_piece(g, u, j, p));
    return f;
}

PiecewiseField<double> tangent_vector(const Grid& g, const GridState& u, int j, const ModelParams& p)
{
    check_state(g, u);
    using detail::Jet;
    PiecewiseField<double> e(g);
    for (int s = -1; s <= 1; ++s) {
        int i = g.wrap(j + s);
        // positions of u_j within (u_{i-1}, u_i, u_{i+1}): s=+1 -> left,
        // s=0 -> centre, s=-1 -> right
        Jet um(u[g.wrap(i - 1)], s == 1 ? 1.0 : 0.0);
        Jet u0(u[i], s == 0 ? 1.0 : 0.0);
        Jet up(u[g.wrap(i + 1)], s == -1 ? 1.0 : 0.0);
        auto c = detail::subgrid_piece_coeffs<Jet>(um, u0, up, p);
        std::vector<double> coeffs(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) coeffs[k] = c[k].d;
        e.add_piece(i, Poly<double>(std::move(coeffs)));
    }
    return e;
}

SampledField reconstruct(const Grid& g, const GridState& u, const ModelParams& p, int samples_per_element)
{
    if (samples_per_element < 1) throw std::invalid_argument("reconstruct: need at least one sample per element");
    SampledField out;
    out.x.reserve(static_cast<std::size_t>(g.m) * samples_per_element);
    out.v.reserve(out.x.capacity());
    for (int j = 0; j < g.m; ++j) {
        Poly<double> piece = subgrid_piece(g, u, j, p);
        for (int q = 0; q < samples_per_element; ++q) {
            double xi = -0.5 + (q + 0.5) / samples_per_element;
            out.x.push_back(g.center(j) + g.h * xi);
            out.v.push_back(piece.eval(xi));
        }
    }
    return out;
}

}  // namespace holifd
