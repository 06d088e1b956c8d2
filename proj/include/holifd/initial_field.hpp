#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "holifd/piecewise.hpp"

namespace holifd {

/// A unit of mass w placed at local offset eta inside element k.
struct PointMass {
    int k = 0;
    double eta = 0;
    double w = 1;
};

/// Tagged union of the supported initial-field descriptions: a pointwise
/// analytic function of x, a piecewise polynomial, or a finite set of point
/// masses.
class InitialField {
  public:
    enum class Kind { analytic, piecewise, points };

    static InitialField analytic(std::function<double(double)> fn, int quad_order = 16);
    static InitialField piecewise(PiecewiseField<double> field);
    static InitialField points(std::vector<PointMass> masses);

    Kind kind() const { return kind_; }
    int quad_order() const { return quad_order_; }
    const PiecewiseField<double>& piecewise_field() const { return pw_; }
    const std::vector<PointMass>& masses() const { return masses_; }

    /// Pointwise value; throws for point-mass fields.
    double value(double x, const Grid& g) const;

    /// Total integral over the domain.
    double mass(const Grid& g) const;

    /// {"kind": "analytic"|"piecewise"|"points", ...}
    static InitialField from_json(const nlohmann::json& spec, const Grid& g);

  private:
    Kind kind_ = Kind::points;
    std::function<double(double)> fn_;
    int quad_order_ = 16;
    PiecewiseField<double> pw_;
    std::vector<PointMass> masses_;
};

/// <z, u0> with the field-kind-appropriate integration: exact polynomial
/// products, Gauss-Legendre for analytic inputs, and w z(k, eta)/h sifting
/// for point masses.
double inner_product(const PiecewiseField<double>& z, const InitialField& u0);

/// Replaces each point mass by a periodic Gaussian of the given width; other
/// kinds pass through unchanged.
InitialField mollify_points(const InitialField& u0, const Grid& g, double sigma);

}  // namespace holifd
