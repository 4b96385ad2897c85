#include "aqn/ds1.hpp"

#include <cmath>

namespace aqn {

double green_kernel(double s, double x, double a) {
    const double guard = 1e-12 * a;
    if (!(s > guard && s < a - guard) || !(x > guard && x < a - guard))
        throw KernelSingularityError("green_kernel: argument touches {0, a}");
    if (s == x) throw KernelSingularityError("green_kernel: s == x");
    const double rx = std::sqrt(a * a - x * x);
    const double rs = std::sqrt(a * a - s * s);
    return std::log(std::fabs((rx - rs) / (rx + rs)));
}

GaussRule gauss_legendre(std::size_t n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root of P_n.
        double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                double jd = static_cast<double>(j);
                p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
            }
            pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-15) break;
        }
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

namespace {

double integrate_cell(double s0, double s1, double x, double a, const GaussRule& gl) {
    double mid = 0.5 * (s0 + s1);
    double half = 0.5 * (s1 - s0);
    double acc = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k)
        acc += gl.weights[k] * green_kernel(mid + half * gl.nodes[k], x, a);
    return half * acc;
}

} // namespace

Matrix<double> assemble_elasticity(const CaseParams& params, const FractureMesh1D& mesh) {
    params.validate();
    const std::size_t n = mesh.n_cells;
    const double a = params.half_length;
    const double guard = 1e-12 * a;
    const double pref = -2.0 * (1.0 - params.poisson_ratio * params.poisson_ratio) /
                        (M_PI * params.youngs_modulus);
    const GaussRule gl = gauss_legendre(params.n_quad);

    Matrix<double> m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = mesh.centers[i];
        for (std::size_t j = 0; j < n; ++j) {
            double s0 = std::max(mesh.edge(j), guard);
            double s1 = std::min(mesh.edge(j + 1), a - guard);
            double val;
            if (s0 < x && x < s1) {
                // log singularity inside the cell: split at x, integrate halves
                val = integrate_cell(s0, x, x, a, gl) + integrate_cell(x, s1, x, a, gl);
            } else {
                val = integrate_cell(s0, s1, x, a, gl);
            }
            m(i, j) = pref * val;
        }
    }
    return m;
}

Ds1Operators Ds1Operators::build(const CaseParams& params) {
    params.validate();
    Ds1Operators ops;
    ops.params = params;
    ops.mesh = FractureMesh1D(params.half_length, params.n_cells);
    ops.elasticity = assemble_elasticity(params, ops.mesh);
    ops.transmissibility = params.dt / (12.0 * params.viscosity * ops.mesh.dx * ops.mesh.dx);
    ops.source.assign(params.n_cells, 0.0);
    ops.source[0] = params.dt * params.injection_rate / ops.mesh.dx;
    return ops;
}

Vec<double> residual(const Ds1Operators& ops, const Vec<double>& p_new,
                     const Vec<double>& w_old) {
    const std::size_t n = ops.mesh.n_cells;
    Vec<double> w = matvec(ops.elasticity, p_new);
    Matrix<double> sys = ops.elasticity + assemble_flux(w, ops.transmissibility);
    Vec<double> r = matvec(sys, p_new);
    for (std::size_t i = 0; i < n; ++i) r[i] -= ops.source[i] + w_old[i];
    return r;
}

Matrix<double> newton_jacobian(const Ds1Operators& ops, const Vec<double>& p) {
    Vec<double> w = matvec(ops.elasticity, p);
    return newton_jacobian_t(ops.elasticity, ops.transmissibility, p, w);
}

Matrix<double> quasi_newton_matrix(const Ds1Operators& ops, const Vec<double>& w_prev) {
    return ops.elasticity + assemble_flux(w_prev, ops.transmissibility);
}

double mass_balance_gap(const Ds1Operators& ops, const Vec<double>& p_star,
                        const Vec<double>& w_old) {
    const std::size_t n = ops.mesh.n_cells;
    Vec<double> w = matvec(ops.elasticity, p_star);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lhs += w[i];
        rhs += ops.source[i] + w_old[i];
    }
    return std::fabs(lhs - rhs);
}

} // namespace aqn
