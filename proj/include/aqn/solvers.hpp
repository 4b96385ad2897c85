// Newton and Quasi-Newton drivers over the DS1 system with full
// per-iteration tracing.  The quasi-Newton step solves
// (A + F(w_prev)) p = q + w_old directly; on the designed iteration path the
// first flux matrix is built from the previous time-step aperture, which
// makes the dry-start fluid front open exactly one cell per iteration.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aqn/ds1.hpp"

namespace aqn {

enum class SolverVariant { quasi_newton, newton };
enum class SolverStatus { converged, max_iters, linear_solve_failure };
enum class Precision { fast, extended };  // double vs double-double internals

struct SolverConfig {
    std::size_t max_iters = 100;
    double rms_tol = 1e-8;    // aperture RMS tolerance, m
    double res_tol = 1e-9;    // relative residual tolerance
    SolverVariant variant = SolverVariant::quasi_newton;
    Precision precision = Precision::fast;
    double eps0 = -1e-4;          // physical threshold on w / sqrt(Q dt)
    double front_floor = 1e-11;   // |w| floor (same units) for the reached front
    bool keep_iterates = true;    // store p^v, w^v in the trace
};

struct IterationRecord {
    double residual_norm = 0.0;
    double lipschitz_c = -1.0;      // < 0 until the ratio is defined
    double min_w_dimless = 0.0;
    std::size_t front_index = 0;
};

struct SolveTrace {
    std::vector<IterationRecord> iterations;
    std::vector<Vec<double>> pressures;   // p^v (when keep_iterates)
    std::vector<Vec<double>> apertures;   // w^v
    SolverStatus status = SolverStatus::max_iters;

    double max_c() const {
        double m = 0.0;
        for (const auto& r : iterations)
            if (r.lipschitz_c > m) m = r.lipschitz_c;
        return m;
    }
    double min_w_dimless() const {
        double m = 0.0;
        for (const auto& r : iterations)
            if (r.min_w_dimless < m) m = r.min_w_dimless;
        return m;
    }
};

struct Solution {
    State state;
    SolveTrace trace;
    bool is_physical = false;
};

// Direct fixed-point iteration of the quasi-Newton matrix.  Without p_init
// the designed path is used (flux built from w_old at the first iterate);
// with p_init the first flux matrix is built from A p_init.
Solution quasi_newton_solve(const Ds1Operators& ops, const Vec<double>& w_old,
                            const SolverConfig& cfg,
                            const std::optional<Vec<double>>& p_init = std::nullopt);

// Vanilla Newton on the full three-term Jacobian, initialization-sensitive by
// design; converged roots may be physical or nonphysical and are only
// classified, never corrected.
Solution newton_solve(const Ds1Operators& ops, const Vec<double>& w_old,
                      const SolverConfig& cfg, const Vec<double>& p_init);

} // namespace aqn
