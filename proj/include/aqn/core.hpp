// Domain types shared by every module: dimensional case parameters, the
// dimensionless groups Pi1 = mu/(E t), Pi2 = q t / a^2, Pi3 = p/E, the
// uniform 1-D fracture mesh, and the (pressure, aperture) state.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace aqn {

struct CaseParams {
    double youngs_modulus = 1.0;   // E, Pa
    double poisson_ratio = 0.25;   // nu
    double viscosity = 1.0;        // mu, Pa s
    double injection_rate = 0.0;   // Q, m^2/s into the modeled half fracture
    double half_length = 1.0;      // a, m
    double dt = 1.0;               // s
    std::size_t n_cells = 1;
    std::size_t n_quad = 20;

    void validate() const;
};

struct DimensionlessGroups {
    double pi1 = 0.0;  // mu / (E t)
    double pi2 = 0.0;  // q t / a^2
};

struct FractureMesh1D {
    std::size_t n_cells = 0;
    double dx = 0.0;
    std::vector<double> centers;  // x_i = (2i - 1) dx / 2

    FractureMesh1D() = default;
    FractureMesh1D(double half_length, std::size_t n);
    double edge(std::size_t i) const { return static_cast<double>(i) * dx; }
};

struct State {
    std::vector<double> pressure;  // Pa
    std::vector<double> aperture;  // m
};

// Normalized dimensional case realizing the dimensionless groups:
// E = 1, dt = t = 1, a = 1, nu = 0.25, mu = pi1, Q = pi2.
CaseParams case_from_groups(double pi1, double pi2, std::size_t n_c, std::size_t n_g = 20);

// Groups recovered from a dimensional case with t = dt.
DimensionlessGroups groups_of(const CaseParams& p);

// Elementwise w / sqrt(Q t).
double dimensionless_aperture(double w, double injection_rate, double t);
std::vector<double> dimensionless_aperture(const std::vector<double>& w, double injection_rate,
                                           double t);

} // namespace aqn
