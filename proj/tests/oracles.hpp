// Test-only oracles, independent of the implementation paths they check:
// adaptive quadrature for the continuum kernel integrals, finite-difference
// Jacobians, and the viscosity-dominated KGD similarity solution.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "aqn/ds1.hpp"

namespace oracles {

// Adaptive Simpson with recursion on the error estimate.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 60) {
    struct Impl {
        const std::function<double(double)>& f;
        static double simpson(const std::function<double(double)>& f, double a, double b,
                              double fa, double fm, double fb) {
            return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }
        double recurse(double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) const {
            double m = 0.5 * (a + b);
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = simpson(f, a, m, fa, flm, fm);
            double right = simpson(f, m, b, fm, frm, fb);
            if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
                   recurse(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
        }
    } impl{f};
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = Impl::simpson(f, a, b, fa, fm, fb);
    return impl.recurse(a, b, fa, fm, fb, whole, tol, depth);
}

// Integral of the aperture kernel over [s0, s1] at collocation point x,
// splitting at the interior singularity and keeping a tiny standoff around it
// (the integrand is log-singular and integrable).
inline double kernel_cell_integral(double s0, double s1, double x, double a,
                                   double tol = 1e-12) {
    auto f = [&](double s) { return aqn::green_kernel(s, x, a); };
    const double guard = 1e-11 * a;  // stay clear of the kernel's own standoff
    s0 = std::max(s0, guard);
    s1 = std::min(s1, a - guard);
    if (s0 < x && x < s1) {
        const double h = 1e-9 * a;
        // integral over [x-h, x+h] of ln|s-x| plus the smooth remainder is
        // O(h ln h); refine each side up to the standoff
        return adaptive_simpson(f, s0, x - h, tol) + adaptive_simpson(f, x + h, s1, tol);
    }
    return adaptive_simpson(f, s0, s1, tol);
}

// Opening of a uniformly pressurized crack evaluated from the continuum
// integral by adaptive quadrature (refined until successive refinements
// agree), at collocation point x.
inline double uniform_pressure_opening(double x, double a, double e_mod, double nu,
                                       double p0) {
    const double pref = -2.0 * (1.0 - nu * nu) / (M_PI * e_mod);
    double tol = 1e-8;
    double prev = pref * p0 * kernel_cell_integral(0.0, a, x, a, tol);
    for (int i = 0; i < 6; ++i) {
        tol /= 100.0;
        double cur = pref * p0 * kernel_cell_integral(0.0, a, x, a, tol);
        if (std::fabs(cur - prev) <= 1e-10 * std::fabs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

// Central finite-difference Jacobian of the DS1 residual.
inline aqn::Matrix<double> fd_jacobian(const aqn::Ds1Operators& ops, const aqn::Vec<double>& p,
                                       const aqn::Vec<double>& w_old, double h = 1e-6) {
    const std::size_t n = p.size();
    aqn::Matrix<double> j(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double hk = h * (1.0 + std::fabs(p[k]));
        aqn::Vec<double> pp = p, pm = p;
        pp[k] += hk;
        pm[k] -= hk;
        aqn::Vec<double> rp = aqn::residual(ops, pp, w_old);
        aqn::Vec<double> rm = aqn::residual(ops, pm, w_old);
        for (std::size_t i = 0; i < n; ++i) j(i, k) = (rp[i] - rm[i]) / (2.0 * hk);
    }
    return j;
}

// Self-similar viscosity-dominated KGD half length (Adachi & Detournay form):
// a(t) = gamma_m0 (E' q^3 t^4 / mu')^{1/6} with q the two-wing rate.
inline double kgd_similarity_half_length(double t, double e_mod, double nu, double mu,
                                         double q_two_wing) {
    const double e_prime = e_mod / (1.0 - nu * nu);
    const double mu_prime = 12.0 * mu;
    const double gamma_m0 = 0.61524;
    return gamma_m0 *
           std::pow(e_prime * q_two_wing * q_two_wing * q_two_wing * t * t * t * t / mu_prime,
                    1.0 / 6.0);
}

} // namespace oracles
