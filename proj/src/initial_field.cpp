#include "holifd/initial_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holifd/quadrature.hpp"

namespace holifd {

InitialField InitialField::analytic(std::function<double(double)> fn, int quad_order)
{
    InitialField f;
    f.kind_ = Kind::analytic;
    f.fn_ = std::move(fn);
    f.quad_order_ = quad_order;
    return f;
}

InitialField InitialField::piecewise(PiecewiseField<double> field)
{
    InitialField f;
    f.kind_ = Kind::piecewise;
    f.pw_ = std::move(field);
    return f;
}

InitialField InitialField::points(std::vector<PointMass> masses)
{
    for (const auto& pm : masses)
        if (pm.eta < -0.5 || pm.eta > 0.5)
            throw std::invalid_argument("InitialField: point-mass eta outside [-1/2, 1/2]");
    InitialField f;
    f.kind_ = Kind::points;
    f.masses_ = std::move(masses);
    return f;
}

double InitialField::value(double x, const Grid& g) const
{
    switch (kind_) {
        case Kind::analytic:
            return fn_(x);
        case Kind::piecewise: {
            auto [j, xi] = g.locate(x);
            return pw_.piece_value(j, xi);
        }
        case Kind::points:
            throw std::logic_error("InitialField::value: point masses have no pointwise value");
    }
    return 0;
}

double InitialField::mass(const Grid& g) const
{
    switch (kind_) {
        case Kind::analytic: {
            QuadRule q = gauss_legendre_element(quad_order_);
            double acc = 0;
            for (int j = 0; j < g.m; ++j)
                for (std::size_t i = 0; i < q.nodes.size(); ++i)
                    acc += q.weights[i] * fn_(g.center(j) + g.h * q.nodes[i]);
            return acc * g.h;
        }
        case Kind::piecewise: {
            double acc = 0;
            for (const auto& [j, p] : pw_.pieces) acc += p.integrate_element();
            return acc * g.h;
        }
        case Kind::points: {
            double acc = 0;
            for (const auto& pm : masses_) acc += pm.w;
            return acc;
        }
    }
    return 0;
}

double inner_product(const PiecewiseField<double>& z, const InitialField& u0)
{
    const Grid& g = z.grid;
    switch (u0.kind()) {
        case InitialField::Kind::piecewise:
            return inner_product(z, u0.piecewise_field());
        case InitialField::Kind::analytic: {
            QuadRule q = gauss_legendre_element(u0.quad_order());
            double acc = 0;
            for (const auto& [j, p] : z.pieces)
                for (std::size_t i = 0; i < q.nodes.size(); ++i)
                    acc += q.weights[i] * p.eval(q.nodes[i]) * u0.value(g.center(j) + g.h * q.nodes[i], g);
            return acc;
        }
        case InitialField::Kind::points: {
            double acc = 0;
            for (const auto& pm : u0.masses()) acc += pm.w * z.piece_value(pm.k, pm.eta) / g.h;
            return acc;
        }
    }
    return 0;
}

InitialField mollify_points(const InitialField& u0, const Grid& g, double sigma)
{
    if (u0.kind() != InitialField::Kind::points) return u0;
    if (!(sigma > 0)) throw std::invalid_argument("mollify_points: need sigma > 0");
    std::vector<PointMass> masses = u0.masses();
    double L = g.length();
    auto fn = [masses, &g, sigma, L](double x) {
        double acc = 0;
        for (const auto& pm : masses) {
            double c = g.center(pm.k) + g.h * pm.eta;
            double d = std::remainder(x - c, L);
            acc += pm.w / (std::sqrt(2 * std::numbers::pi) * sigma) * std::exp(-0.5 * d * d / (sigma * sigma));
        }
        return acc;
    };
    return InitialField::analytic(fn, 32);
}

InitialField InitialField::from_json(const nlohmann::json& spec, const Grid& g)
{
    std::string kind = spec.at("kind").get<std::string>();
    if (kind == "points") {
        std::vector<PointMass> masses;
        for (const auto& e : spec.at("masses"))
            masses.push_back({e.at("k").get<int>(), e.at("eta").get<double>(), e.value("w", 1.0)});
        return points(std::move(masses));
    }
    if (kind == "piecewise") {
        PiecewiseField<double> f = piecewise_from_json<double>(g, spec.at("pieces"));
        if (spec.contains("background")) {
            double bg = spec.at("background").get<double>();
            f = f + PiecewiseField<double>::constant_field(g, bg);
        }
        return piecewise(std::move(f));
    }
    if (kind == "analytic") {
        int order = spec.value("quad_order", 16);
        std::string form = spec.at("form").get<std::string>();
        double L = g.length();
        if (form == "constant") {
            double v = spec.at("value").get<double>();
            return analytic([v](double) { return v; }, order);
        }
        if (form == "sin") {
            double amp = spec.value("amplitude", 1.0);
            double waves = spec.value("waves", 1.0);
            double phase = spec.value("phase", 0.0);
            return analytic([=](double x) { return amp * std::sin(2 * std::numbers::pi * waves * (x - phase) / L); },
                            order);
        }
        if (form == "gaussian") {
            double c = spec.at("centre").get<double>();
            double sigma = spec.at("sigma").get<double>();
            double amp = spec.contains("mass")
                             ? spec.at("mass").get<double>() / (std::sqrt(2 * std::numbers::pi) * sigma)
                             : spec.value("amplitude", 1.0);
            return analytic(
                [=](double x) {
                    double d = std::remainder(x - c, L);
                    return amp * std::exp(-0.5 * d * d / (sigma * sigma));
                },
                order);
        }
        throw std::invalid_argument("InitialField: unknown analytic form '" + form + "'");
    }
    throw std::invalid_argument("InitialField: unknown kind '" + kind + "'");
}

}  // namespace holifd
