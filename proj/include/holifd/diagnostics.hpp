#pragma once

#include <string>
#include <vector>

#include "holifd/initial_field.hpp"
#include "holifd/model.hpp"
#include "holifd/projector.hpp"
#include "holifd/reference.hpp"

namespace holifd {

struct MomentResult {
    std::vector<double> m;      // m[p] = Int (x - x_k)^p v(u, x) dx
    bool antipode_warning = false;
};

/// Moments of the reconstructed subgrid field about element k, by exact
/// polynomial integration per element; periodic images resolved by
/// minimal-distance unwrapping.  Warns when the field is not localised
/// (significant magnitude at the domain antipode of k).
MomentResult moments(const Grid& g, const GridState& u, const ModelParams& p, int k, int pmax);

struct MomentReport {
    std::vector<double> t, m0, m1, m2;
    double dm2dt_slope = 0;
    bool antipode_warning = false;
};

/// Integrates the model and tracks m0, m1, m2; fits the slope of m2 by least
/// squares over t >= fit_t_min (skipping the initial transient).
MomentReport moment_evolution(const Grid& g, const GridState& u0, const ModelParams& p, const IntegrationConfig& cfg,
                              int k, double fit_t_min = 0.2);

struct ResidualResult {
    double sup = 0;
    std::vector<double> per_element;       // dense-sample sup per element
    std::vector<double> per_element_mean;  // exact signed element mean of the residual
};

/// Dense-sample sup-norm of v_t - v_xx + a v v_x over element interiors
/// (edges excluded); v_t by the chain rule sum_i e_i du_i/dt.  Requires
/// gamma = 1.
ResidualResult pde_residual(const Grid& g, const GridState& u, const ModelParams& p, int samples_per_element);

/// Moments of the initial field itself about element k (the comparison
/// truth), by the field-kind-appropriate integration.
std::vector<double> initial_field_moments(const InitialField& u0, const Grid& g, int k, int pmax);

struct CompareConfig {
    double T = 1.0;
    int fine_multiple = 64;
    double model_dt = 0;                  // default h^2/8
    double oracle_dt = 0;                 // default dx^2/4
    int quad_order = 64;                  // quadrature for projections and moment truth
    int k_ref = 0;                        // centre element for moment diagnostics
    double mollify_sigma_factor = 0.125;  // point masses become Gaussians of sigma = factor h
};

struct StrategyResult {
    std::string strategy;  // "naive", "element_average", "holistic"
    int m = 0;
    double h = 0;
    double l2_error = 0;               // reconstructed v(u(T)) vs fine oracle
    double m0_err = 0, m1_err = 0, m2_err = 0;  // initial-moment errors vs the field truth
};

/// Runs the three initial-condition strategies through the holistic model and
/// scores each against the fine-grid oracle.
std::vector<StrategyResult> compare_ic_strategies(const InitialField& u0, const Grid& g, const ModelParams& p,
                                                  const CompareConfig& cfg);

}  // namespace holifd
