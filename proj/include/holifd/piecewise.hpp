#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "holifd/grid.hpp"
#include "holifd/polynomial.hpp"

namespace holifd {

enum class Side { interior, left_limit, right_limit };

/// Piecewise polynomial over the element lattice: element index -> polynomial
/// in the local coordinate of that element.  Evaluation outside the support
/// is zero.
template <class S>
struct PiecewiseField {
    Grid grid;
    std::map<int, Poly<S>> pieces;
    int degree_cap = Poly<S>::kDegreeCap;

    PiecewiseField() = default;
    explicit PiecewiseField(const Grid& g, int cap = Poly<S>::kDegreeCap) : grid(g), degree_cap(cap) {}

    static PiecewiseField characteristic(const Grid& g, int j)
    {
        PiecewiseField f(g);
        f.set_piece(j, Poly<S>::constant(S(1)));
        return f;
    }

    static PiecewiseField constant_field(const Grid& g, S value)
    {
        PiecewiseField f(g);
        for (int j = 0; j < g.m; ++j) f.set_piece(j, Poly<S>::constant(value));
        return f;
    }

    void set_piece(int j, Poly<S> p)
    {
        if (p.degree() > degree_cap)
            throw std::invalid_argument("PiecewiseField: piece degree " + std::to_string(p.degree()) +
                                        " exceeds cap " + std::to_string(degree_cap));
        if (p.is_zero())
            pieces.erase(grid.wrap(j));
        else
            pieces[grid.wrap(j)] = std::move(p);
    }

    void add_piece(int j, const Poly<S>& p)
    {
        auto it = pieces.find(grid.wrap(j));
        if (it == pieces.end())
            set_piece(j, p);
        else
            set_piece(j, it->second + p);
    }

    const Poly<S>* piece(int j) const
    {
        auto it = pieces.find(grid.wrap(j));
        return it == pieces.end() ? nullptr : &it->second;
    }

    S piece_value(int j, const S& xi) const
    {
        const Poly<S>* p = piece(j);
        return p ? p->eval(xi) : S(0);
    }

    /// Value of the requested element's piece; limits at a shared edge
    /// evaluate the adjacent element's piece at its matching edge.
    S evaluate(int j, const S& xi, Side side = Side::interior) const
    {
        S half = scalar_ratio<S>(1, 2);
        if (xi > half || xi < -half) throw std::invalid_argument("PiecewiseField::evaluate: xi out of range");
        if (side == Side::left_limit && xi == -half) return piece_value(j - 1, half);
        if (side == Side::right_limit && xi == half) return piece_value(j + 1, -half);
        return piece_value(j, xi);
    }

    /// d/dxi piecewise (no 1/h factor).
    PiecewiseField derivative_xi() const
    {
        PiecewiseField d(grid, degree_cap);
        for (const auto& [j, p] : pieces) d.set_piece(j, p.derivative());
        return d;
    }

    S integrate_element(int j) const
    {
        const Poly<S>* p = piece(j);
        return p ? p->integrate_element() : S(0);
    }

    /// Jump across the edge between elements j and j+1: right minus left.
    S jump(int j) const { return piece_value(j + 1, scalar_ratio<S>(-1, 2)) - piece_value(j, scalar_ratio<S>(1, 2)); }

    /// Two-sided average at the edge between elements j and j+1.
    S mean(int j) const
    {
        return (piece_value(j + 1, scalar_ratio<S>(-1, 2)) + piece_value(j, scalar_ratio<S>(1, 2))) *
               scalar_ratio<S>(1, 2);
    }

    PiecewiseField operator+(const PiecewiseField& o) const
    {
        PiecewiseField r = *this;
        for (const auto& [j, p] : o.pieces) r.add_piece(j, p);
        return r;
    }
    PiecewiseField operator*(const S& s) const
    {
        PiecewiseField r(grid, degree_cap);
        for (const auto& [j, p] : pieces) r.set_piece(j, p * s);
        return r;
    }

    PiecewiseField<double> to_double_field() const
    {
        PiecewiseField<double> r(grid, degree_cap);
        for (const auto& [j, p] : pieces) r.set_piece(j, p.to_double_poly());
        return r;
    }
};

/// d/dx = (1/h) d/dxi for floating fields.
inline PiecewiseField<double> diff(const PiecewiseField<double>& f)
{
    return f.derivative_xi() * (1.0 / f.grid.h);
}

/// <z, u> = (1/h) Int_I z u dx.  For two piecewise fields the 1/h prefactor
/// cancels against dx = h dxi, leaving pure per-element xi-integrals.
template <class S>
S inner_product(const PiecewiseField<S>& z, const PiecewiseField<S>& u)
{
    if (z.grid.m != u.grid.m || z.grid.h != u.grid.h)
        throw std::invalid_argument("inner_product: grid mismatch");
    S acc(0);
    for (const auto& [j, p] : z.pieces) {
        const Poly<S>* q = u.piece(j);
        if (q) acc += (p * *q).integrate_element();
    }
    return acc;
}

namespace detail {
template <class S>
nlohmann::json coeff_to_json(const S& c)
{
    if constexpr (std::is_same_v<S, double>)
        return c;
    else
        return rational_to_string(c);
}
template <class S>
S coeff_from_json(const nlohmann::json& v)
{
    if constexpr (std::is_same_v<S, double>)
        return v.get<double>();
    else
        return rational_from_string(v.get<std::string>());
}
}  // namespace detail

/// JSON: element index -> coefficient list; exact rationals as "p/q" strings.
template <class S>
nlohmann::json to_json(const PiecewiseField<S>& f)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [j, p] : f.pieces) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : p.coeffs()) coeffs.push_back(detail::coeff_to_json<S>(c));
        out[std::to_string(j)] = coeffs;
    }
    return out;
}

template <class S>
PiecewiseField<S> piecewise_from_json(const Grid& g, const nlohmann::json& in)
{
    PiecewiseField<S> f(g);
    for (auto it = in.begin(); it != in.end(); ++it) {
        std::vector<S> coeffs;
        for (const auto& v : it.value()) coeffs.push_back(detail::coeff_from_json<S>(v));
        f.set_piece(std::stoi(it.key()), Poly<S>(std::move(coeffs)));
    }
    return f;
}

}  // namespace holifd
