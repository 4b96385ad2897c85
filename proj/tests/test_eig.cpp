#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "aqn/analysis.hpp"  // Rng
#include "aqn/eig.hpp"

using namespace aqn;

namespace {

// companion matrix of a monic polynomial with the given coefficients
// x^n + c_{n-1} x^{n-1} + ... + c_0
Matrix<double> companion(const std::vector<double>& c) {
    const std::size_t n = c.size();
    Matrix<double> m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) m(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -c[i];
    return m;
}

// monic polynomial coefficients from chosen roots
std::vector<double> poly_from_roots(const std::vector<std::complex<double>>& roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = next;
    }
    std::vector<double> out(c.size() - 1);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) out[i] = c[i].real();
    return out;
}

void check_spectrum(const Spectrum& s, std::vector<std::complex<double>> expected, double tol) {
    REQUIRE(s.eigenvalues.size() == expected.size());
    for (const auto& lam : s.eigenvalues) {
        auto best = std::min_element(expected.begin(), expected.end(),
                                     [&](const auto& a, const auto& b) {
                                         return std::abs(a - lam) < std::abs(b - lam);
                                     });
        REQUIRE(best != expected.end());
        CHECK(std::abs(*best - lam) <= tol);
        expected.erase(best);
    }
}

} // namespace

TEST_CASE("identity matrix has rho 1 with all unit eigenvalues") {
    Spectrum s = eigenvalues(Matrix<double>::identity(5));
    CHECK(s.rho == doctest::Approx(1.0));
    for (const auto& lam : s.eigenvalues) {
        CHECK(lam.real() == doctest::Approx(1.0));
        CHECK(lam.imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("diagonal matrix spectrum") {
    Matrix<double> m(2, 2);
    m(0, 0) = 0.5;
    m(1, 1) = -2.0;
    Spectrum s = eigenvalues(m);
    CHECK(s.rho == doctest::Approx(2.0));
    check_spectrum(s, {{0.5, 0.0}, {-2.0, 0.0}}, 1e-12);
}

TEST_CASE("rotation block yields the complex pair") {
    const double th = 0.7;
    Matrix<double> m(2, 2);
    m(0, 0) = std::cos(th);
    m(0, 1) = -std::sin(th);
    m(1, 0) = std::sin(th);
    m(1, 1) = std::cos(th);
    Spectrum s = eigenvalues(m);
    check_spectrum(s, {{std::cos(th), std::sin(th)}, {std::cos(th), -std::sin(th)}}, 1e-12);
    CHECK(s.rho == doctest::Approx(1.0));
}

TEST_CASE("companion matrices reproduce known roots") {
    std::vector<std::complex<double>> roots{{2.0, 0.0}, {-0.5, 0.0}, {0.25, 0.9}, {0.25, -0.9},
                                            {-3.0, 0.0}};
    Spectrum s = eigenvalues(companion(poly_from_roots(roots)));
    check_spectrum(s, roots, 1e-8);
    CHECK(s.rho == doctest::Approx(3.0).epsilon(1e-8));

    std::vector<std::complex<double>> roots2{{1e-3, 0.0}, {5.0, 2.0}, {5.0, -2.0}, {-1.0, 0.1},
                                             {-1.0, -0.1}, {0.7, 0.0}};
    Spectrum s2 = eigenvalues(companion(poly_from_roots(roots2)));
    check_spectrum(s2, roots2, 1e-7);
}

TEST_CASE("random similarity-transformed diagonal recovers its spectrum") {
    Rng rng(42u);
    std::vector<double> lam{3.0, -1.5, 0.2, 0.9, -0.05};
    const std::size_t n = lam.size();
    // X D X^{-1} with a mildly random X via row operations on D
    Matrix<double> m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = lam[i];
    for (int k = 0; k < 8; ++k) {
        std::size_t i = rng.next() % n, j = rng.next() % n;
        if (i == j) continue;
        double f = rng.uniform(-0.8, 0.8);
        for (std::size_t c = 0; c < n; ++c) m(i, c) += f * m(j, c);   // row op
        for (std::size_t r = 0; r < n; ++r) m(r, j) -= f * m(r, i);   // inverse col op
    }
    Spectrum s = eigenvalues(m);
    std::vector<std::complex<double>> expected;
    for (double v : lam) expected.emplace_back(v, 0.0);
    check_spectrum(s, expected, 1e-7);
    CHECK(s.rho == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("1x1 and empty edge cases") {
    Matrix<double> one(1, 1);
    one(0, 0) = -7.25;
    Spectrum s = eigenvalues(one);
    REQUIRE(s.eigenvalues.size() == 1);
    CHECK(s.eigenvalues[0].real() == doctest::Approx(-7.25));
    CHECK(s.rho == doctest::Approx(7.25));
}
