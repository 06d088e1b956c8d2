#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "holifd/polynomial.hpp"

namespace holifd::derive {

/// Translation-invariant piecewise field: element offset from j -> polynomial
/// in that element's local xi.  All scalars exact rationals; the diffusive
/// problem is h-free once expressed in xi.
using OffsetPieces = std::map<int, RPoly>;

/// Power series in the coupling parameter: orders[n] = z^(n), supported on
/// offsets -n .. n.
struct GammaSeries {
    std::vector<OffsetPieces> orders;

    int order_count() const { return static_cast<int>(orders.size()); }
    const OffsetPieces& order(int n) const { return orders.at(n); }

    /// Sum_n gamma^n z^(n) collected per offset.
    OffsetPieces evaluate(const Rational& gamma) const;
};

/// <f_j, g_(j+d)> for translation-invariant offset fields.
Rational ip_offset(const OffsetPieces& f, const OffsetPieces& g, int d);

/// Tangent-vector series of the linear-diffusion subgrid field:
/// e^(0) = chi, e^(1) the three quadratic pieces.
GammaSeries tangent_series_linear();

struct DeriveError : std::runtime_error {
    int order;
    std::string constraint;
    DeriveError(int order_, std::string constraint_)
        : std::runtime_error("derive: order " + std::to_string(order_) + ": " + constraint_),
          order(order_),
          constraint(std::move(constraint_))
    {
    }
};

struct DeriveOptions {
    bool allow_experimental = false;  // permits order 3 (five-point stencil)
};

/// Solves the dual problem order by order in gamma: within each element a
/// double antidifferentiation in xi, constants fixed by the adjoint edge
/// conditions, then the normalisation <z_j, e_i> = delta_ij.  Returns orders
/// 0 .. ell-1; evaluation at gamma = 1 gives the usable projector.
GammaSeries derive_projectors(int ell, const GammaSeries& e = tangent_series_linear(), const DeriveOptions& = {});

struct VerifyEntry {
    std::string check;     // "ibc_jump", "ibc_mean", "normalization", "dual_residual"
    int order;             // gamma power
    std::string location;  // edge or offset
    Rational defect;       // exactly zero when satisfied
    bool ok;
};

struct VerifyReport {
    std::vector<VerifyEntry> entries;

    bool all_ok_through(int max_order) const
    {
        for (const auto& e : entries)
            if (e.order <= max_order && !e.ok) return false;
        return true;
    }
    std::vector<VerifyEntry> failures_through(int max_order) const
    {
        std::vector<VerifyEntry> out;
        for (const auto& e : entries)
            if (e.order <= max_order && !e.ok) out.push_back(e);
        return out;
    }
};

/// Exact-rational, order-by-order report of the adjoint edge conditions, the
/// normalisation, and the dual-equation residual.  Orders up to and including
/// the series length are reported; the entries one past a truncated series
/// expose the defect that drives the next correction.
VerifyReport verify_projector(const GammaSeries& z, const GammaSeries& e = tangent_series_linear());

/// The known two-order series for linear diffusion (golden target for
/// `derive --order 2 --check`).
GammaSeries golden_order2();

nlohmann::json to_json(const GammaSeries& series);
nlohmann::json offset_pieces_to_json(const OffsetPieces& pieces);

}  // namespace holifd::derive
