#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holifd/projector.hpp"
#include "holifd/subgrid.hpp"

using namespace holifd;

namespace {

// dense LU solve for the small fixed-point oracle systems
GridState dense_solve(std::vector<std::vector<double>> A, GridState b)
{
    int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < n; ++r) {
            double f = A[r][c] / A[c][c];
            for (int k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    GridState x(n);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int k = r + 1; k < n; ++k) acc -= A[r][k] * x[k];
        x[r] = acc / A[r][r];
    }
    return x;
}

}  // namespace

TEST_CASE("diffusive projector pieces at gamma = 1")
{
    Grid g(8, 1.0);
    GridState u(g.m, 0.0);
    ModelParams p(0.0, 1.0, 1.0);
    auto centre = projector_piece(g, u, 3, 0, p);
    CHECK(centre.coeff(0) == doctest::Approx(7.0 / 6));
    CHECK(centre.coeff(1) == doctest::Approx(0.0));
    CHECK(centre.coeff(2) == doctest::Approx(-1.0));
    auto left = projector_piece(g, u, 3, -1, p);   // piece on element j-1
    CHECK(left.coeff(0) == doctest::Approx(-1.0 / 12));
    CHECK(left.coeff(1) == doctest::Approx(0.5));
    CHECK(left.coeff(2) == doctest::Approx(0.5));
    auto right = projector_piece(g, u, 3, 1, p);
    CHECK(right.coeff(0) == doctest::Approx(-1.0 / 12));
    CHECK(right.coeff(1) == doctest::Approx(-0.5));
    CHECK(right.coeff(2) == doctest::Approx(0.5));
}

TEST_CASE("gamma = 0 reduces to the characteristic function")
{
    Grid g(8, 1.0);
    GridState u(g.m, 0.7);
    auto set = projection_vectors(g, u, ModelParams(0.0, 0.0, 1.0));
    for (int j = 0; j < g.m; ++j) {
        CHECK(set.pieces[j][1].coeff(0) == doctest::Approx(1.0));
        CHECK(set.pieces[j][1].degree() == 0);
        CHECK(set.pieces[j][0].is_zero());
        CHECK(set.pieces[j][2].is_zero());
    }
}

TEST_CASE("advective block agrees with the alternative printed transcription")
{
    // two printed forms of the O(a) modification; both keyed in, the second
    // below, the first inside projector_piece.  Central differencing in a
    // isolates the O(a) block exactly since the pieces are quadratic in a.
    Grid g(8, 0.5);
    std::mt19937 rng(512);
    std::uniform_real_distribution<double> dist(-2, 2);
    GridState u(g.m);
    for (auto& v : u) v = dist(rng);
    double h = g.h, gamma = 1.0, eps = 1e-3;

    auto zprime = [&](int j, int s, double xi) {
        double um = u[g.wrap(j - 1)], u0 = u[g.wrap(j)], up = u[g.wrap(j + 1)];
        double xi3 = xi * xi * xi;
        if (s == 0) return (h / 48) * ((-12 * xi + 16 * xi3) * u0 + up - um);
        if (s == -1) return (h / 48) * (u0 + (-3 + 6 * xi - 8 * xi3) * um);
        return (h / 48) * (-u0 + (3 + 6 * xi - 8 * xi3) * up);
    };

    for (int j : {0, 2, 5})
        for (int s = -1; s <= 1; ++s)
            for (double xi : {-0.5, -0.21, 0.0, 0.37, 0.5}) {
                auto at = [&](double a) {
                    return projector_piece(g, u, j, s, ModelParams(a, gamma, h)).eval(xi);
                };
                double da = (at(eps) - at(-eps)) / (2 * eps);
                CHECK(da == doctest::Approx(zprime(j, s, xi)).epsilon(1e-10));
            }
}

TEST_CASE("partition of unity: diffusive case, every gamma")
{
    Grid g(8, 0.5);
    GridState u(g.m, 0.0);
    for (double gamma : {0.0, 0.3, 0.7, 1.0}) {
        auto set = projection_vectors(g, u, ModelParams(0.0, gamma, g.h));
        for (int i = 0; i < g.m; ++i)
            for (int q = 0; q < 25; ++q) {
                double xi = -0.5 + q / 24.0;
                CHECK(std::abs(set.partition_sum(i, xi) - 1.0) < 1e-14);
            }
    }
}

TEST_CASE("partition of unity: constant state with advection at gamma = 1")
{
    Grid g(8, 0.5);
    for (double U : {0.5, 2.0})
        for (double a : {0.4, 1.0}) {
            GridState u(g.m, U);
            auto set = projection_vectors(g, u, ModelParams(a, 1.0, g.h));
            for (int i = 0; i < g.m; ++i)
                for (int q = 0; q < 25; ++q) {
                    double xi = -0.5 + q / 24.0;
                    CHECK(std::abs(set.partition_sum(i, xi) - 1.0) < 1e-12);
                }
        }
}

TEST_CASE("element averages")
{
    Grid g(8, 0.5);
    auto constant = InitialField::analytic([](double) { return 4.2; }, 8);
    for (double v : element_average(constant, g)) CHECK(v == doctest::Approx(4.2));

    auto pm = InitialField::points({{5, 0.25, 1.0}});
    GridState ua = element_average(pm, g);
    for (int j = 0; j < g.m; ++j) CHECK(ua[j] == doctest::Approx(j == 5 ? 1.0 / g.h : 0.0));

    // odd piece about the element centre averages to zero
    PiecewiseField<double> pw(g);
    pw.set_piece(2, Poly<double>{0.0, 1.0});
    GridState uo = element_average(InitialField::piecewise(pw), g);
    CHECK(uo[2] == doctest::Approx(0.0));
}

TEST_CASE("project_linear of the unit field is the unit state for every gamma")
{
    Grid g(8, 0.5);
    auto ones = InitialField::piecewise(PiecewiseField<double>::constant_field(g, 1.0));
    for (double gamma : {0.0, 0.4, 1.0}) {
        GridState u = project_linear(ones, g, ModelParams(0.0, gamma, g.h));
        for (double v : u) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("point-release weights match the closed forms")
{
    Grid g(8, 0.5);
    ModelParams p(0.0, 1.0, g.h);
    GridState u0 = point_release_ic(g, 4, 0.0, 1.0, p);
    CHECK(g.h * u0[4] == doctest::Approx(7.0 / 6).epsilon(1e-15));
    CHECK(g.h * u0[3] == doctest::Approx(-1.0 / 12).epsilon(1e-15));
    CHECK(g.h * u0[5] == doctest::Approx(-1.0 / 12).epsilon(1e-15));

    GridState uh = point_release_ic(g, 4, 0.5, 1.0, p);
    CHECK(g.h * uh[4] == doctest::Approx(11.0 / 12).epsilon(1e-15));
    CHECK(g.h * uh[5] == doctest::Approx(7.0 / 24).epsilon(1e-15));
    CHECK(g.h * uh[3] == doctest::Approx(-5.0 / 24).epsilon(1e-15));

    GridState uq = point_release_ic(g, 4, 0.25, 1.0, p);
    CHECK(g.h * uq[4] == doctest::Approx(53.0 / 48).epsilon(1e-15));
    CHECK(g.h * uq[5] == doctest::Approx(7.0 / 96).epsilon(1e-15));
    CHECK(g.h * uq[3] == doctest::Approx(-17.0 / 96).epsilon(1e-15));

    auto w = point_release_weights_exact(Rational(1, 4));
    CHECK(w[0] == Rational(-17, 96));
    CHECK(w[1] == Rational(53, 48));
    CHECK(w[2] == Rational(7, 96));
    CHECK(w[0] + w[1] + w[2] == Rational(1));
}

TEST_CASE("point_release_ic equals project_linear of the point mass")
{
    Grid g(8, 0.5);
    ModelParams p(0.0, 1.0, g.h);
    std::mt19937 rng(64);
    std::uniform_real_distribution<double> etad(-0.5, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        double eta = etad(rng);
        GridState closed = point_release_ic(g, 3, eta, 2.0, p);
        GridState projected = project_linear(InitialField::points({{3, eta, 2.0}}), g, p);
        for (int j = 0; j < g.m; ++j) CHECK(closed[j] == doctest::Approx(projected[j]).epsilon(1e-14));
    }
}

TEST_CASE("mass conservation of the linear projection for all field kinds")
{
    Grid g(12, 0.5);
    ModelParams p(0.0, 1.0, g.h);
    double L = g.length();

    auto gaussian = InitialField::analytic(
        [&](double x) { return std::exp(-0.5 * std::pow(std::remainder(x - 2.1, L) / 0.4, 2)); }, 32);
    PiecewiseField<double> pw(g);
    pw.set_piece(3, Poly<double>{1.0, -0.5, 2.0});
    pw.set_piece(4, Poly<double>{0.5, 0.25});
    auto piecewise = InitialField::piecewise(pw);
    auto masses = InitialField::points({{2, -0.3, 1.5}, {7, 0.45, -0.5}});

    for (const InitialField& u0 : {gaussian, piecewise, masses}) {
        GridState u = project_linear(u0, g, p);
        double total = 0;
        for (double v : u) total += v * g.h;
        CHECK(total == doctest::Approx(u0.mass(g)).epsilon(1e-12));
    }
}

TEST_CASE("normalization defect is quadratic in gamma")
{
    Grid g(8, 0.5);
    GridState zero(g.m, 0.0);
    auto ones = PiecewiseField<double>::constant_field(g, 1.0);
    auto defect = [&](double gamma) {
        ModelParams p(0.0, gamma, g.h);
        double worst = 0;
        for (int j : {0, 3}) {
            PiecewiseField<double> zj(g);
            for (int s = -1; s <= 1; ++s) zj.add_piece(j + s, projector_piece(g, zero, j, s, p));
            for (int i = 0; i < g.m; ++i) {
                auto e = tangent_vector(g, zero, i, p);
                double val = inner_product(zj, e) - (i == j ? 1.0 : 0.0);
                worst = std::max(worst, std::abs(val));
            }
        }
        return worst;
    };
    double d2 = defect(0.2), d1 = defect(0.1), d05 = defect(0.05);
    CHECK(d2 / d1 == doctest::Approx(4.0).epsilon(0.02));
    CHECK(d1 / d05 == doctest::Approx(4.0).epsilon(0.02));
    // the gamma^2 coefficient itself is <z1, e1> = 19/480 on the diagonal
    CHECK(d2 == doctest::Approx(0.2 * 0.2 * 19.0 / 480).epsilon(1e-10));
}

TEST_CASE("nonlinear fixed point at a = 0 solves the orthogonality system")
{
    Grid g(8, 0.5);
    ModelParams p(0.0, 1.0, g.h);
    auto u0 = InitialField::points({{3, 0.2, 1.0}, {6, -0.4, 0.7}});
    GridState fixed = project(u0, g, p);

    // oracle: <z_j, v(u)> = sum_i M_ji u_i with circulant M = I + E,
    // E(0) = 19/480, E(+-1) = 1/720, E(+-2) = -61/2880 at gamma = 1
    GridState b = project_linear(u0, g, p);
    std::vector<std::vector<double>> M(g.m, std::vector<double>(g.m, 0.0));
    for (int j = 0; j < g.m; ++j) {
        M[j][j] = 1.0 + 19.0 / 480;
        M[j][g.wrap(j + 1)] += 1.0 / 720;
        M[j][g.wrap(j - 1)] += 1.0 / 720;
        M[j][g.wrap(j + 2)] += -61.0 / 2880;
        M[j][g.wrap(j - 2)] += -61.0 / 2880;
    }
    GridState oracle = dense_solve(M, b);
    for (int j = 0; j < g.m; ++j) CHECK(fixed[j] == doctest::Approx(oracle[j]).epsilon(1e-10));

    // at gamma = 0 the pairing is exactly diagonal, so one step reaches b
    ModelParams p0(0.0, 0.0, g.h);
    GridState f0 = project(u0, g, p0, {1e-12, 2});
    GridState b0 = project_linear(u0, g, p0);
    for (int j = 0; j < g.m; ++j) CHECK(f0[j] == doctest::Approx(b0[j]).epsilon(1e-14));
}

TEST_CASE("nonlinear projection of a constant field")
{
    Grid g(8, 0.5);
    double U = 1.3, a = 0.4;
    ModelParams p(a, 1.0, g.h);
    auto u0 = InitialField::piecewise(PiecewiseField<double>::constant_field(g, U));
    GridState u = project(u0, g, p);
    // constant across elements, shifted from U by ~ a^2 h^2 U^3 / 24
    for (int j = 1; j < g.m; ++j) CHECK(u[j] == doctest::Approx(u[0]).epsilon(1e-13));
    double shift = u[0] - U;
    CHECK(shift == doctest::Approx(a * a * g.h * g.h * U * U * U / 24).epsilon(0.05));
    // the reconstructed field keeps the exact mass
    PiecewiseField<double> v = subgrid_field(g, u, p);
    double mass = 0;
    for (int j = 0; j < g.m; ++j) mass += g.h * v.integrate_element(j);
    CHECK(mass == doctest::Approx(U * g.length()).epsilon(1e-11));
}

TEST_CASE("symmetric bump on a background shifts the neighbours as the advection demands")
{
    Grid g(12, 0.5);
    int k = 6;
    double U = 1.0;
    // symmetric bump supported inside element k on a constant background
    PiecewiseField<double> pw = PiecewiseField<double>::constant_field(g, U);
    pw.add_piece(k, Poly<double>{0.25, 0.0, -1.0});  // 1/4 - xi^2
    auto u0 = InitialField::piecewise(pw);

    GridState base = project(u0, g, ModelParams(0.0, 1.0, g.h));
    GridState out = project(u0, g, ModelParams(0.05, 1.0, g.h));
    CHECK(out[g.wrap(k - 1)] > base[g.wrap(k - 1)]);
    CHECK(out[g.wrap(k + 1)] < base[g.wrap(k + 1)]);
}

TEST_CASE("non-convergence raises a diagnostic error")
{
    Grid g(8, 0.5);
    auto u0 = InitialField::points({{3, 0.0, 1.0}});
    CHECK_THROWS_AS(project(u0, g, ModelParams(0.0, 1.0, g.h), {1e-12, 1}), ProjectionError);
    try {
        project(u0, g, ModelParams(0.0, 1.0, g.h), {1e-12, 1});
    } catch (const ProjectionError& e) {
        CHECK(e.last_iterate.size() == static_cast<std::size_t>(g.m));
        CHECK(e.residual > 0);
    }
}
