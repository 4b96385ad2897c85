// Dense nonsymmetric eigenvalues: balancing, Householder reduction to
// Hessenberg form, then Francis double-shift QR sweeps.
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "aqn/linalg.hpp"

namespace aqn {

struct EigenConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    double rho = 0.0;  // max modulus
};

// Full complex spectrum of a real square matrix.  Throws
// EigenConvergenceError if a QR sweep fails to deflate within the iteration
// cap (30 sweeps per eigenvalue).
Spectrum eigenvalues(const Matrix<double>& m);

inline double spectral_radius(const Matrix<double>& m) { return eigenvalues(m).rho; }

} // namespace aqn
