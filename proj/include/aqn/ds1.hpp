// Discrete operators of the semi-analytical single-fracture model: the dense
// elasticity matrix A mapping pressure to aperture through the plane-strain
// Green's function, the aperture-dependent tridiagonal flux matrix F, and the
// residual / Jacobian pair used by the nonlinear solvers.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "aqn/core.hpp"
#include "aqn/linalg.hpp"

namespace aqn {

struct KernelSingularityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ln| (sqrt(a^2-x^2) - sqrt(a^2-s^2)) / (sqrt(a^2-x^2) + sqrt(a^2-s^2)) |,
// strictly negative for interior s != x; log-singular as s -> x.
double green_kernel(double s, double x, double a);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t n);

// Collocation assembly of A (n_c x n_c, all entries positive).  Source cells
// are integrated by Gauss-Legendre; the cell containing the collocation point
// is split at the singularity and the rule applied on each half.
Matrix<double> assemble_elasticity(const CaseParams& params, const FractureMesh1D& mesh);

struct Ds1Operators {
    Matrix<double> elasticity;        // A
    double transmissibility = 0.0;    // T = dt / (12 mu dx^2)
    FractureMesh1D mesh;
    Vec<double> source;               // q: q_1 = dt Q / dx, rest 0
    CaseParams params;

    static Ds1Operators build(const CaseParams& params);
};

// Tridiagonal flux matrix with interface conductivities T * ((w_i+w_j)/2)^3.
// Row and column sums vanish identically.  Negative apertures are allowed;
// the matrix is then indefinite, which is the pathology under study.
template <class Real>
Matrix<Real> assemble_flux(const Vec<Real>& aperture, Real transmissibility) {
    const std::size_t n = aperture.size();
    Matrix<Real> f(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Real mid = (aperture[i] + aperture[i + 1]) * Real(0.5);
        Real c = transmissibility * mid * mid * mid;
        f(i, i) += c;
        f(i + 1, i + 1) += c;
        f(i, i + 1) -= c;
        f(i + 1, i) -= c;
    }
    return f;
}

// Three-term Jacobian A + F(w) + D for precomputed w = A p.  D carries the
// chain-rule derivatives of the interface cubes through w = A p and is dense.
template <class Real>
Matrix<Real> newton_jacobian_t(const Matrix<Real>& a, Real t, const Vec<Real>& p,
                               const Vec<Real>& w) {
    const std::size_t n = p.size();
    Matrix<Real> j = a + assemble_flux(w, t);
    for (std::size_t i = 0; i < n; ++i) {
        for (int nb = 0; nb < 2; ++nb) {
            if (nb == 0 && i + 1 >= n) continue;
            if (nb == 1 && i == 0) continue;
            const std::size_t jn = nb == 0 ? i + 1 : i - 1;
            const Real mid = (w[i] + w[jn]) * Real(0.5);
            const Real coeff = -t * Real(3.0) * mid * mid * (p[jn] - p[i]);
            for (std::size_t k = 0; k < n; ++k)
                j(i, k) += coeff * Real(0.5) * (a(i, k) + a(jn, k));
        }
    }
    return j;
}

// R = (A + F(A p)) p - q - w_old.
Vec<double> residual(const Ds1Operators& ops, const Vec<double>& p_new, const Vec<double>& w_old);

// Full three-term Jacobian J = A + F(A p) + D(p), where D carries the
// derivatives of the interface cubes through w = A p and is dense.
Matrix<double> newton_jacobian(const Ds1Operators& ops, const Vec<double>& p);

// Quasi-Newton matrix: A + F(w_prev); the flux-derivative term is dropped.
Matrix<double> quasi_newton_matrix(const Ds1Operators& ops, const Vec<double>& w_prev);

// |sum_i (A p*)_i - sum_i (q + w_old)_i|, the total mass-balance functional
// that vanishes at every exact quasi-Newton iterate.
double mass_balance_gap(const Ds1Operators& ops, const Vec<double>& p_star,
                        const Vec<double>& w_old);

} // namespace aqn
