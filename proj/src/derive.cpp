#include "holifd/derive.hpp"

#include <algorithm>

namespace holifd::derive {

namespace {

Rational half() { return Rational(1, 2); }

RPoly zero_poly() { return RPoly(); }

const RPoly& piece_or_zero(const OffsetPieces& f, int o)
{
    static const RPoly kZero;
    auto it = f.find(o);
    return it == f.end() ? kZero : it->second;
}

OffsetPieces second_derivative(const OffsetPieces& f)
{
    OffsetPieces out;
    for (const auto& [o, p] : f) {
        RPoly dd = p.derivative().derivative();
        if (!dd.is_zero()) out[o] = dd;
    }
    return out;
}

/// Linear expression c + sum_i a_i x_i over the unknown constants.
struct LinExpr {
    Rational c{0};
    std::map<int, Rational> a;

    LinExpr& add(const Rational& v)
    {
        c += v;
        return *this;
    }
    LinExpr& add_unknown(int idx, const Rational& coeff)
    {
        if (coeff != 0) a[idx] += coeff;
        return *this;
    }
    LinExpr& add_scaled(const LinExpr& o, const Rational& s)
    {
        c += o.c * s;
        for (const auto& [i, v] : o.a) a[i] += v * s;
        return *this;
    }
};

struct RationalSolver {
    int n_unknowns;
    std::vector<std::vector<Rational>> rows;  // augmented
    std::vector<std::string> labels;

    explicit RationalSolver(int n) : n_unknowns(n) {}

    void add_equation(const LinExpr& lhs, const Rational& rhs, std::string label)
    {
        std::vector<Rational> row(n_unknowns + 1, Rational(0));
        for (const auto& [i, v] : lhs.a) row[i] = v;
        row[n_unknowns] = rhs - lhs.c;
        rows.push_back(std::move(row));
        labels.push_back(std::move(label));
    }

    /// Gauss-Jordan elimination.  Throws DeriveError on an inconsistent
    /// equation; undetermined unknowns are reported back and set to zero.
    std::vector<Rational> solve(int order, std::vector<int>* free_unknowns)
    {
        int nr = static_cast<int>(rows.size());
        std::vector<int> pivot_col(nr, -1);
        int r = 0;
        for (int col = 0; col < n_unknowns && r < nr; ++col) {
            int pr = -1;
            for (int i = r; i < nr; ++i)
                if (rows[i][col] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(rows[r], rows[pr]);
            std::swap(labels[r], labels[pr]);
            Rational inv = rows[r][col];
            for (auto& v : rows[r]) v /= inv;
            for (int i = 0; i < nr; ++i) {
                if (i == r || rows[i][col] == 0) continue;
                Rational f = rows[i][col];
                for (int cidx = 0; cidx <= n_unknowns; ++cidx) rows[i][cidx] -= f * rows[r][cidx];
            }
            pivot_col[r] = col;
            ++r;
        }
        for (int i = r; i < nr; ++i)
            if (rows[i][n_unknowns] != 0)
                throw DeriveError(order, "inconsistent constraint: " + labels[i]);
        std::vector<Rational> x(n_unknowns, Rational(0));
        std::vector<bool> pivoted(n_unknowns, false);
        for (int i = 0; i < r; ++i) {
            x[pivot_col[i]] = rows[i][n_unknowns];
            pivoted[pivot_col[i]] = true;
        }
        if (free_unknowns)
            for (int col = 0; col < n_unknowns; ++col)
                if (!pivoted[col]) free_unknowns->push_back(col);
        // a free unknown interacting with a pivot row would make x wrong;
        // with the zero convention the pivot rows already hold the values
        return x;
    }
};

}  // namespace

Rational ip_offset(const OffsetPieces& f, const OffsetPieces& g, int d)
{
    Rational acc(0);
    for (const auto& [o, p] : f) {
        auto it = g.find(o - d);
        if (it != g.end()) acc += (p * it->second).integrate_element();
    }
    return acc;
}

OffsetPieces GammaSeries::evaluate(const Rational& gamma) const
{
    OffsetPieces out;
    Rational gn(1);
    for (const auto& ord : orders) {
        for (const auto& [o, p] : ord) {
            RPoly scaled = p * gn;
            auto it = out.find(o);
            if (it == out.end())
                out[o] = scaled;
            else
                it->second = it->second + scaled;
        }
        gn *= gamma;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

GammaSeries tangent_series_linear()
{
    GammaSeries e;
    e.orders.push_back({{0, RPoly{Rational(1)}}});
    e.orders.push_back({{0, RPoly{Rational(0), Rational(0), Rational(-1)}},
                        {-1, RPoly{Rational(0), half(), half()}},
                        {1, RPoly{Rational(0), -half(), half()}}});
    return e;
}

GammaSeries golden_order2()
{
    GammaSeries z;
    z.orders.push_back({{0, RPoly{Rational(1)}}});
    z.orders.push_back({{0, RPoly{Rational(1, 6), Rational(0), Rational(-1)}},
                        {-1, RPoly{Rational(-1, 12), half(), half()}},
                        {1, RPoly{Rational(-1, 12), -half(), half()}}});
    return z;
}

GammaSeries derive_projectors(int ell, const GammaSeries& e, const DeriveOptions& opts)
{
    int max_supported = opts.allow_experimental ? 3 : 2;
    if (ell < 1 || ell > max_supported)
        throw std::invalid_argument("derive_projectors: order must be in {1, 2}" +
                                    std::string(opts.allow_experimental ? " or 3" : ""));

    GammaSeries z;
    z.orders.push_back({{0, RPoly{Rational(1)}}});  // leading approximation chi_j

    for (int n = 1; n < ell; ++n) {
        // Known forcing K[o] of z^(n)'' = sum_i <D z, e_i> z_i at order n,
        // i.e. the contributions with the second derivative at order k < n.
        std::map<int, RPoly> K;
        for (int o = -n; o <= n; ++o) K[o] = zero_poly();
        int e_orders = e.order_count();
        for (int k = 1; k < n; ++k) {
            OffsetPieces ddzk = second_derivative(z.orders[k]);
            for (int l = 0; l < e_orders; ++l) {
                int p = n - k - l;
                if (p < 0 || p >= z.order_count()) continue;
                for (int d = -(n + 2); d <= n + 2; ++d) {
                    Rational c = ip_offset(ddzk, e.orders[l], d);
                    if (c == 0) continue;
                    for (auto& [o, acc] : K) {
                        const RPoly& q = piece_or_zero(z.orders[p], o - d);
                        if (!q.is_zero()) acc += q * c;
                    }
                }
            }
        }
        for (auto& [o, p] : K)
            if (p.integrate_element() != 0)
                throw DeriveError(n, "solvability: forcing on offset " + std::to_string(o) +
                                         " has nonzero element mean");

        // q_o = (double antiderivative of K[o]) + mu_o xi^2/2 + B_o xi + A_o
        auto idx = [n](int o, int which) { return (o + n) * 3 + which; };  // 0: mu, 1: B, 2: A
        int n_unknowns = 3 * (2 * n + 1);
        std::map<int, RPoly> G;
        for (int o = -n; o <= n; ++o) G[o] = K[o].antiderivative().antiderivative();

        auto deriv_at = [&](int o, const Rational& xi) {
            LinExpr ex;
            if (o < -n || o > n) return ex;  // zero outside the stencil
            ex.add(G[o].derivative().eval(xi));
            ex.add_unknown(idx(o, 0), xi);  // d/dxi of xi^2/2
            ex.add_unknown(idx(o, 1), Rational(1));
            return ex;
        };
        auto value_at = [&](int o, const Rational& xi) {
            LinExpr ex;
            if (o < -n || o > n) return ex;
            ex.add(G[o].eval(xi));
            ex.add_unknown(idx(o, 0), xi * xi / 2);
            ex.add_unknown(idx(o, 1), xi);
            ex.add_unknown(idx(o, 2), Rational(1));
            return ex;
        };
        auto integral_against = [&](int o, const RPoly& phi) {
            LinExpr ex;
            if (o < -n || o > n) return ex;
            ex.add((G[o] * phi).integrate_element());
            ex.add_unknown(idx(o, 0), (RPoly{Rational(0), Rational(0), half()} * phi).integrate_element());
            ex.add_unknown(idx(o, 1), (RPoly{Rational(0), Rational(1)} * phi).integrate_element());
            ex.add_unknown(idx(o, 2), phi.integrate_element());
            return ex;
        };

        RationalSolver solver(n_unknowns);
        const OffsetPieces& zprev = z.orders[n - 1];
        for (int o = -n - 1; o <= n; ++o) {
            std::string edge = std::to_string(o) + "|" + std::to_string(o + 1);
            LinExpr left = deriv_at(o, half());
            LinExpr right = deriv_at(o + 1, -half());
            LinExpr jump_eq = right;
            jump_eq.add_scaled(left, Rational(-1));
            solver.add_equation(jump_eq, Rational(0), "ibc jump [z_x] at edge " + edge);

            const RPoly& pl = piece_or_zero(zprev, o);
            const RPoly& pr = piece_or_zero(zprev, o + 1);
            Rational mean_prev = (pl.derivative().eval(half()) + pr.derivative().eval(-half())) / 2;
            Rational jump_prev = pr.eval(-half()) - pl.eval(half());
            LinExpr mean_eq = left;
            mean_eq.add_scaled(right, Rational(1));
            // mean(z^(n)_xi) = mean(z^(n-1)_xi) + [z^(n-1)]
            solver.add_equation(mean_eq, (mean_prev + jump_prev) * 2, "ibc mean at edge " + edge);
        }
        for (int d = -n; d <= n; ++d) {
            LinExpr norm;
            for (int o = -n; o <= n; ++o) {
                const RPoly& phi = piece_or_zero(e.orders[0], o - d);
                if (!phi.is_zero()) norm.add_scaled(integral_against(o, phi), Rational(1));
            }
            Rational lower(0);
            for (int l = 1; l < e_orders && n - l >= 0; ++l) lower += ip_offset(z.orders[n - l], e.orders[l], d);
            norm.add(lower);
            solver.add_equation(norm, Rational(0), "normalization <z_j, e_(j+" + std::to_string(d) + ")>");
        }

        std::vector<int> free_unknowns;
        std::vector<Rational> x = solver.solve(n, &free_unknowns);
        // remaining freedom (none at the supported orders) is killed by the
        // zero convention: no multiple of the lower-order shape re-enters

        OffsetPieces zn;
        for (int o = -n; o <= n; ++o) {
            RPoly p = G[o] + RPoly{Rational(0), Rational(0), half()} * x[idx(o, 0)] +
                      RPoly{Rational(0), Rational(1)} * x[idx(o, 1)] + RPoly{x[idx(o, 2)]};
            if (!p.is_zero()) zn[o] = p;
        }
        z.orders.push_back(std::move(zn));
    }
    return z;
}

VerifyReport verify_projector(const GammaSeries& z, const GammaSeries& e)
{
    VerifyReport rep;
    int L = z.order_count();
    int e_orders = e.order_count();
    auto zorder = [&](int n) -> const OffsetPieces& {
        static const OffsetPieces kEmpty;
        return (n >= 0 && n < L) ? z.orders[n] : kEmpty;
    };
    auto push = [&](std::string check, int n, std::string loc, Rational defect) {
        bool ok = defect == 0;
        rep.entries.push_back({std::move(check), n, std::move(loc), std::move(defect), ok});
    };

    for (int n = 0; n <= L; ++n) {
        for (int o = -L - 1; o <= L; ++o) {
            std::string edge = std::to_string(o) + "|" + std::to_string(o + 1);
            const RPoly& ql = piece_or_zero(zorder(n), o);
            const RPoly& qr = piece_or_zero(zorder(n), o + 1);
            Rational jump_n = qr.derivative().eval(-half()) - ql.derivative().eval(half());
            push("ibc_jump", n, "edge " + edge, jump_n);

            Rational mean_n = (ql.derivative().eval(half()) + qr.derivative().eval(-half())) / 2;
            const RPoly& pl = piece_or_zero(zorder(n - 1), o);
            const RPoly& pr = piece_or_zero(zorder(n - 1), o + 1);
            Rational mean_prev = (pl.derivative().eval(half()) + pr.derivative().eval(-half())) / 2;
            Rational jump_prev = pr.eval(-half()) - pl.eval(half());
            push("ibc_mean", n, "edge " + edge, jump_prev + mean_prev - mean_n);
        }
    }

    for (int n = 0; n < L; ++n)
        for (int d = -L - 1; d <= L + 1; ++d) {
            Rational acc(0);
            for (int l = 0; l < e_orders && n - l >= 0; ++l) acc += ip_offset(zorder(n - l), e.orders[l], d);
            if (n == 0 && d == 0) acc -= 1;
            push("normalization", n, "offset " + std::to_string(d), acc);
        }

    for (int n = 0; n < L; ++n) {
        std::map<int, RPoly> R;
        for (const auto& [o, p] : second_derivative(zorder(n))) R[o] = p;
        for (int k = 1; k <= n; ++k) {
            OffsetPieces ddzk = second_derivative(zorder(k));
            for (int l = 0; l < e_orders; ++l) {
                int p = n - k - l;
                if (p < 0) continue;
                for (int d = -(L + 2); d <= L + 2; ++d) {
                    Rational c = ip_offset(ddzk, e.orders[l], d);
                    if (c == 0) continue;
                    for (const auto& [o2, q] : zorder(p)) {
                        int o = o2 + d;
                        auto it = R.find(o);
                        if (it == R.end())
                            R[o] = q * (-c);
                        else
                            it->second = it->second - q * c;
                    }
                }
            }
        }
        for (const auto& [o, p] : R) {
            Rational defect(0);
            for (const auto& c : p.coeffs())
                if (c != 0) {
                    defect = c;
                    break;
                }
            push("dual_residual", n, "offset " + std::to_string(o), defect);
        }
    }
    return rep;
}

nlohmann::json offset_pieces_to_json(const OffsetPieces& pieces)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [o, p] : pieces) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : p.coeffs()) coeffs.push_back(rational_to_string(c));
        out[std::to_string(o)] = coeffs;
    }
    return out;
}

nlohmann::json to_json(const GammaSeries& series)
{
    nlohmann::json powers = nlohmann::json::array();
    for (const auto& ord : series.orders) powers.push_back(offset_pieces_to_json(ord));
    return nlohmann::json{{"orders", series.order_count()},
                          {"gamma_powers", powers},
                          {"gamma1_total", offset_pieces_to_json(series.evaluate(Rational(1)))}};
}

}  // namespace holifd::derive
