#include <doctest.h>

#include <cmath>

#include "aqn/analysis.hpp"  // Rng
#include "aqn/linalg.hpp"

using namespace aqn;

namespace {

Matrix<double> random_matrix(std::size_t n, Rng& rng) {
    Matrix<double> m(n, n);
    for (auto& v : m.data) v = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 3.0;  // keep it well conditioned
    return m;
}

} // namespace

TEST_CASE("identity solve returns rhs") {
    Matrix<double> id = Matrix<double>::identity(6);
    Vec<double> b{1, -2, 3, 0.5, 7, -0.25};
    Vec<double> x = linear_solve(id, b);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(x[i] == b[i]);
}

TEST_CASE("random well-conditioned 15x15 solve has tiny residual") {
    Rng rng(987654321u);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix<double> m = random_matrix(15, rng);
        Vec<double> b(15);
        for (auto& v : b) v = rng.uniform(-2.0, 2.0);
        Vec<double> x = linear_solve(m, b);
        Vec<double> r = matvec(m, x);
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        CHECK(norm2(r) <= 1e-12 * norm2(b));
    }
}

TEST_CASE("exactly singular matrix raises the singular error") {
    Matrix<double> m(3, 3);
    double vals[3] = {1.0, 2.0, -0.5};
    for (std::size_t j = 0; j < 3; ++j) {
        m(0, j) = vals[j];
        m(1, j) = vals[j];  // duplicated row
        m(2, j) = static_cast<double>(j) - 1.0;
    }
    Vec<double> b{1, 2, 3};
    CHECK_THROWS_AS((void)linear_solve(m, b), SingularMatrixError);
}

TEST_CASE("refinement recovers accuracy on a badly scaled system") {
    // huge graph-Laplacian block plus a small dense part, the structure the
    // quasi-Newton matrix takes at extreme transmissibility
    const std::size_t n = 6;
    Rng rng(5u);
    Matrix<double> m = random_matrix(n, rng);
    for (auto& v : m.data) v *= 1e-2;
    const double big = 1e12;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m(i, i) += big;
        m(i + 1, i + 1) += big;
        m(i, i + 1) -= big;
        m(i + 1, i) -= big;
    }
    Vec<double> x_true(n);
    for (auto& v : x_true) v = rng.uniform(-1.0, 1.0);
    Vec<double> b = matvec(m, x_true);
    Vec<double> x = linear_solve(m, b);
    Vec<double> r = matvec(m, x);
    for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
    CHECK(norm2(r) <= 1e-10 * norm2(b));
}

TEST_CASE("dd LU solves systems double cannot resolve") {
    // conductivity contrast ~1e18: the pressure difference across the strong
    // link falls below double resolution of the absolute pressures
    Matrix<DD> m(2, 2);
    const DD big(1e18), small(1.0);
    m(0, 0) = big + small;
    m(0, 1) = -big;
    m(1, 0) = -big;
    m(1, 1) = big + small;
    Vec<DD> b{DD(1.0), DD(0.0)};
    Vec<DD> x = linear_solve(m, b);
    // exact solution: x0 = (big + 1) / (2 big + 1), x1 = big / (2 big + 1)
    DD denom = DD(2.0) * big + DD(1.0);
    DD err0 = x[0] - (big + DD(1.0)) / denom;
    DD err1 = x[1] - big / denom;
    // absolute error sits in the constant direction (kappa ~ 2e18 here);
    // the flux-driving difference below is what must survive
    CHECK(std::fabs(to_double(err0)) < 1e-12);
    CHECK(std::fabs(to_double(err1)) < 1e-12);
    // the difference x0 - x1 = 1/(2 big + 1) survives in dd
    CHECK(to_double(x[0] - x[1]) == doctest::Approx(5e-19).epsilon(1e-6));
}
