#include <doctest.h>

#include <cmath>

#include "aqn/analysis.hpp"
#include "aqn/core.hpp"
#include "aqn/solvers.hpp"

using namespace aqn;

TEST_CASE("case_from_groups is direct substitution of the normalization") {
    CaseParams p = case_from_groups(1e-3, 1e-3, 4, 20);
    CHECK(p.youngs_modulus == 1.0);
    CHECK(p.poisson_ratio == 0.25);
    CHECK(p.viscosity == 1e-3);
    CHECK(p.injection_rate == 1e-3);
    CHECK(p.half_length == 1.0);
    CHECK(p.dt == 1.0);
    CHECK(p.n_cells == 4);
    CHECK(p.n_quad == 20);
}

TEST_CASE("sweep-box corner case is valid") {
    CaseParams p = case_from_groups(1e-17, 1e-5, 15);
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("non-positive pi1 and negative pi2 are rejected") {
    CHECK_THROWS_AS(case_from_groups(0.0, 1e-3, 4), std::invalid_argument);
    CHECK_THROWS_AS(case_from_groups(-1e-3, 1e-3, 4), std::invalid_argument);
    CHECK_THROWS_AS(case_from_groups(1e-3, -1e-6, 4), std::invalid_argument);
}

TEST_CASE("group construction is a bijection onto the normalized slice") {
    Rng rng(7u);
    for (int k = 0; k < 50; ++k) {
        double pi1 = std::exp(rng.uniform(std::log(1e-17), std::log(1.5e-1)));
        double pi2 = std::exp(rng.uniform(std::log(1e-5), std::log(2e-2)));
        DimensionlessGroups g = groups_of(case_from_groups(pi1, pi2, 4));
        CHECK(g.pi1 == doctest::Approx(pi1).epsilon(1e-15));
        CHECK(g.pi2 == doctest::Approx(pi2).epsilon(1e-15));
    }
}

TEST_CASE("dimensionless aperture definition") {
    CHECK(dimensionless_aperture(0.0, 1e-3, 1.0) == 0.0);
    double s = std::sqrt(1e-3 * 1.0);
    CHECK(dimensionless_aperture(s, 1e-3, 1.0) == doctest::Approx(1.0));
    // the epsilon_0 scale the analyses report
    CHECK(dimensionless_aperture(-1e-5 * s, 1e-3, 1.0) == doctest::Approx(-1e-5));
    CHECK_THROWS_AS(dimensionless_aperture(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("mesh invariants") {
    FractureMesh1D mesh(2.0, 10);
    CHECK(mesh.dx * static_cast<double>(mesh.n_cells) == doctest::Approx(2.0).epsilon(1e-15));
    for (std::size_t i = 0; i < mesh.n_cells; ++i) {
        CHECK(mesh.centers[i] > 0.0);
        CHECK(mesh.centers[i] < 2.0);
        if (i) CHECK(mesh.centers[i] > mesh.centers[i - 1]);
    }
}

TEST_CASE("Pi3 = p/E is invariant under admissible renormalization") {
    // same groups, E scaled by 10 with mu co-scaled (t, a, Q fixed)
    const double pi1 = 2e-4, pi2 = 3e-3;
    CaseParams base = case_from_groups(pi1, pi2, 8);
    CaseParams scaled = base;
    scaled.youngs_modulus *= 10.0;
    scaled.viscosity *= 10.0;
    REQUIRE(groups_of(scaled).pi1 == doctest::Approx(pi1));
    REQUIRE(groups_of(scaled).pi2 == doctest::Approx(pi2));

    SolverConfig cfg;
    Vec<double> w0(8, 0.0);
    Solution s1 = quasi_newton_solve(Ds1Operators::build(base), w0, cfg);
    Solution s2 = quasi_newton_solve(Ds1Operators::build(scaled), w0, cfg);
    REQUIRE(s1.trace.status == SolverStatus::converged);
    REQUIRE(s2.trace.status == SolverStatus::converged);
    for (std::size_t i = 0; i < 8; ++i) {
        double pi3_a = s1.state.pressure[i] / base.youngs_modulus;
        double pi3_b = s2.state.pressure[i] / scaled.youngs_modulus;
        CHECK(pi3_a == doctest::Approx(pi3_b).epsilon(1e-7));
    }
}
