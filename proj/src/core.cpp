#include "aqn/core.hpp"

#include <cmath>
#include <string>

namespace aqn {

void CaseParams::validate() const {
    if (!(youngs_modulus > 0.0)) throw std::invalid_argument("CaseParams: E must be > 0");
    if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
        throw std::invalid_argument("CaseParams: nu must be in [0, 0.5)");
    if (!(viscosity > 0.0)) throw std::invalid_argument("CaseParams: mu must be > 0");
    if (!(injection_rate >= 0.0)) throw std::invalid_argument("CaseParams: Q must be >= 0");
    if (!(half_length > 0.0)) throw std::invalid_argument("CaseParams: a must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("CaseParams: dt must be > 0");
    if (n_cells < 1) throw std::invalid_argument("CaseParams: n_cells must be >= 1");
    if (n_quad < 1) throw std::invalid_argument("CaseParams: n_quad must be >= 1");
}

FractureMesh1D::FractureMesh1D(double half_length, std::size_t n)
    : n_cells(n), dx(half_length / static_cast<double>(n)), centers(n) {
    if (!(half_length > 0.0) || n < 1)
        throw std::invalid_argument("FractureMesh1D: need a > 0 and n >= 1");
    for (std::size_t i = 0; i < n; ++i)
        centers[i] = (2.0 * static_cast<double>(i) + 1.0) * dx / 2.0;
}

CaseParams case_from_groups(double pi1, double pi2, std::size_t n_c, std::size_t n_g) {
    if (!(pi1 > 0.0)) throw std::invalid_argument("case_from_groups: pi1 must be > 0");
    if (!(pi2 >= 0.0)) throw std::invalid_argument("case_from_groups: pi2 must be >= 0");
    CaseParams p;
    p.youngs_modulus = 1.0;
    p.poisson_ratio = 0.25;
    p.viscosity = pi1;        // pi1 * E * t with E = t = 1
    p.injection_rate = pi2;   // pi2 * a^2 / t with a = t = 1
    p.half_length = 1.0;
    p.dt = 1.0;
    p.n_cells = n_c;
    p.n_quad = n_g;
    p.validate();
    return p;
}

DimensionlessGroups groups_of(const CaseParams& p) {
    return {p.viscosity / (p.youngs_modulus * p.dt),
            p.injection_rate * p.dt / (p.half_length * p.half_length)};
}

double dimensionless_aperture(double w, double injection_rate, double t) {
    const double qt = injection_rate * t;
    if (!(qt > 0.0)) throw std::invalid_argument("dimensionless_aperture: Q*t must be > 0");
    return w / std::sqrt(qt);
}

std::vector<double> dimensionless_aperture(const std::vector<double>& w, double injection_rate,
                                           double t) {
    const double qt = injection_rate * t;
    if (!(qt > 0.0)) throw std::invalid_argument("dimensionless_aperture: Q*t must be > 0");
    const double s = 1.0 / std::sqrt(qt);
    std::vector<double> r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[i] * s;
    return r;
}

} // namespace aqn
