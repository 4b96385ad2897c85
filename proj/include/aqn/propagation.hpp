// Fluid-driven fracture propagation on the DS1 model: Irwin-criterion
// failure via the plane-strain weight-function stress intensity factor, the
// growth/secant time-step controller, conservative remeshing on tip
// advancement, and the viscosity-dominated KGD driver.
#pragma once

#include <string>
#include <vector>

#include "aqn/solvers.hpp"

namespace aqn {

struct PropagationConfig {
    double advancement_length = 2.0;   // da, m
    double growth_factor = 1.2;        // alpha
    double critical_sif = 5e5;         // K_c, Pa sqrt(m)
    double max_dt = 0.5;               // s
    double total_time = 90.0;          // s
    int secant_max_corrections = 30;   // bisection fallbacks before aborting a step
    double prop_tol = 1e-3;            // |K_eq/K_c - 1| band for propagation
    double dt0 = 1e-3;                 // first trial step, s
    SolverConfig solver;

    void validate() const;
};

struct RegimeNumber {
    double k_m = 0.0;
    bool viscosity_dominated() const { return k_m < 1.0; }
    bool toughness_dominated() const { return k_m > 4.0; }
};

// K_m = 8 K_c / (2 E'^3 mu' q)^{1/4} with mu' = 12 mu, E' = E/(1 - nu^2),
// q the flow rate into both wings.
RegimeNumber regime_number(const CaseParams& params, double critical_sif, double q_total);

// K_I = 2 sqrt(a/pi) * integral of p(x)/sqrt(a^2 - x^2), with the
// inverse-square-root weight integrated exactly over each cell.
double stress_intensity(const Vec<double>& p, const FractureMesh1D& mesh, double a);

enum class StepAction { grow, correct, propagate };

struct TimestepUpdate {
    double dt_new = 0.0;
    StepAction action = StepAction::grow;
    bool fallback = false;  // degenerate secant replaced by bisection
};

TimestepUpdate timestep_update(double k_eq, double k_eq_old, double k_c, double dt_old,
                               double alpha, double prop_tol = 1e-3);

struct PropagationState {
    double half_length = 0.0;
    FractureMesh1D mesh;
    Vec<double> w_old;     // aperture at t^n on the current mesh
    Vec<double> p_old;     // pressure carried for the K_eq_old evaluation
    double t = 0.0;
    double dt = 0.0;
    double k_eq_old = 0.0;
    double dx0 = 0.0;      // initial cell size; remeshing keeps dx within 2x of it
};

// a <- a + da with a uniform remesh (cell count grows with a) and a
// conservative piecewise-constant transfer of the aperture; new tip cells get
// w = 0 and the adjacent cell's pressure.
PropagationState remesh_on_advance(const PropagationState& state, double da);

struct KgdStepRecord {
    std::size_t step = 0;
    double t = 0.0;       // window start
    double dt = 0.0;
    long iters = 0;
    double max_c = 0.0;
    double k_eq = 0.0;
    std::string action;   // grow | correct | propagate | abort:<reason>
};

struct KgdAccepted {
    double t = 0.0;       // time of the accepted state
    double a = 0.0;       // half length the state was solved on
    long iters = 0;
    double max_c = 0.0;
    Vec<double> x, p, w;
};

struct KgdHistory {
    std::vector<KgdStepRecord> steps;            // one row per trial solve
    std::vector<KgdAccepted> accepted;           // accepted states
    std::vector<std::pair<double, double>> length;  // (t, a) after each accepted step
    bool completed = false;
    std::string abort_reason;
};

// Outer loop: quasi-Newton the step, evaluate the SIF, apply timestep_update;
// sub-critical trials are accepted (time marches, next step grows by alpha),
// overshoots are re-solved with the interpolated step, and a within-tolerance
// K_eq extends the tip.  After each extension the carried-over state is
// re-checked elastically and extended again while still critical.
KgdHistory run_kgd(const CaseParams& initial, const PropagationConfig& prop);

} // namespace aqn
