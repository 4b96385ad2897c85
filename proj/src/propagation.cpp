#include "aqn/propagation.hpp"

#include <cmath>

namespace aqn {

void PropagationConfig::validate() const {
    if (!(advancement_length > 0.0))
        throw std::invalid_argument("PropagationConfig: da must be > 0");
    if (!(growth_factor > 1.0)) throw std::invalid_argument("PropagationConfig: alpha must be > 1");
    if (!(critical_sif > 0.0)) throw std::invalid_argument("PropagationConfig: K_c must be > 0");
    if (!(max_dt > 0.0) || !(total_time > 0.0) || !(dt0 > 0.0))
        throw std::invalid_argument("PropagationConfig: time parameters must be > 0");
    if (secant_max_corrections < 1)
        throw std::invalid_argument("PropagationConfig: secant_max_corrections must be >= 1");
}

RegimeNumber regime_number(const CaseParams& params, double critical_sif, double q_total) {
    if (!(critical_sif > 0.0) || !(q_total > 0.0))
        throw std::invalid_argument("regime_number: K_c and q must be > 0");
    const double e_prime =
        params.youngs_modulus / (1.0 - params.poisson_ratio * params.poisson_ratio);
    const double mu_prime = 12.0 * params.viscosity;
    const double denom =
        std::pow(2.0 * e_prime * e_prime * e_prime * mu_prime * q_total, 0.25);
    return {8.0 * critical_sif / denom};
}

double stress_intensity(const Vec<double>& p, const FractureMesh1D& mesh, double a) {
    double acc = 0.0;
    double asin_lo = 0.0;
    for (std::size_t i = 0; i < mesh.n_cells; ++i) {
        const double hi = std::min(mesh.edge(i + 1) / a, 1.0);
        const double asin_hi = std::asin(hi);
        acc += p[i] * (asin_hi - asin_lo);
        asin_lo = asin_hi;
    }
    return 2.0 * std::sqrt(a / M_PI) * acc;
}

TimestepUpdate timestep_update(double k_eq, double k_eq_old, double k_c, double dt_old,
                               double alpha, double prop_tol) {
    if (!(dt_old > 0.0)) throw std::invalid_argument("timestep_update: dt_old must be > 0");
    if (std::fabs(k_eq / k_c - 1.0) <= prop_tol) return {dt_old, StepAction::propagate, false};
    if (k_eq < k_c) return {alpha * dt_old, StepAction::grow, false};
    if (k_eq > k_eq_old) {
        const double dt_new = (k_c - k_eq_old) / (k_eq - k_eq_old) * dt_old;
        if (std::isfinite(dt_new) && dt_new > 0.0 && dt_new < dt_old)
            return {dt_new, StepAction::correct, false};
    }
    return {0.5 * dt_old, StepAction::correct, true};
}

PropagationState remesh_on_advance(const PropagationState& state, double da) {
    if (da < 0.0) throw std::invalid_argument("remesh_on_advance: da must be >= 0");
    const double a_new = state.half_length + da;
    const std::size_t n_new =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(a_new / state.dx0)));
    if (da == 0.0 && n_new == state.mesh.n_cells) return state;

    PropagationState out = state;
    out.half_length = a_new;
    out.mesh = FractureMesh1D(a_new, n_new);
    out.w_old.assign(n_new, 0.0);
    out.p_old.assign(n_new, 0.0);

    // conservative piecewise-constant projection of the aperture; pressure is
    // projected the same way with empty tip cells taking the last projected value
    const double dx_new = out.mesh.dx;
    const double dx_old = state.mesh.dx;
    double last_p = state.p_old.empty() ? 0.0 : state.p_old.back();
    for (std::size_t i = 0; i < n_new; ++i) {
        const double lo = out.mesh.edge(i);
        const double hi = out.mesh.edge(i + 1);
        double vol = 0.0, pvol = 0.0, cover = 0.0;
        const std::size_t j0 =
            static_cast<std::size_t>(std::max(0.0, std::floor(lo / dx_old)));
        for (std::size_t j = j0; j < state.mesh.n_cells; ++j) {
            const double l2 = state.mesh.edge(j);
            if (l2 >= hi) break;
            const double ov = std::min(hi, state.mesh.edge(j + 1)) - std::max(lo, l2);
            if (ov <= 0.0) continue;
            vol += ov * state.w_old[j];
            pvol += ov * state.p_old[j];
            cover += ov;
        }
        out.w_old[i] = vol / dx_new;
        out.p_old[i] = cover > 0.0 ? pvol / cover : last_p;
        if (cover > 0.0) last_p = out.p_old[i];
    }
    return out;
}

namespace {

Ds1Operators build_ops(const CaseParams& base, double a, std::size_t n_c, double dt) {
    CaseParams p = base;
    p.half_length = a;
    p.n_cells = n_c;
    p.dt = dt;
    return Ds1Operators::build(p);
}

void set_dt(Ds1Operators& ops, double dt) {
    ops.params.dt = dt;
    ops.transmissibility = dt / (12.0 * ops.params.viscosity * ops.mesh.dx * ops.mesh.dx);
    ops.source[0] = dt * ops.params.injection_rate / ops.mesh.dx;
}

} // namespace

KgdHistory run_kgd(const CaseParams& initial, const PropagationConfig& prop) {
    initial.validate();
    prop.validate();

    KgdHistory hist;
    PropagationState st;
    st.half_length = initial.half_length;
    st.mesh = FractureMesh1D(initial.half_length, initial.n_cells);
    st.dx0 = st.mesh.dx;
    st.w_old.assign(initial.n_cells, 0.0);
    st.p_old.assign(initial.n_cells, 0.0);
    st.t = 0.0;
    st.dt = prop.dt0;
    st.k_eq_old = 0.0;

    SolverConfig scfg = prop.solver;
    scfg.variant = SolverVariant::quasi_newton;
    scfg.keep_iterates = false;

    Ds1Operators ops = build_ops(initial, st.half_length, st.mesh.n_cells, st.dt);
    hist.length.emplace_back(st.t, st.half_length);

    int fallbacks_in_window = 0;
    std::size_t step_no = 0;
    const double t_end = prop.total_time;

    auto abort_run = [&](const std::string& reason) {
        hist.steps.push_back({step_no, st.t, st.dt, 0, 0.0, 0.0, "abort:" + reason});
        hist.abort_reason = reason;
    };

    while (st.t < t_end * (1.0 - 1e-12)) {
        st.dt = std::min({st.dt, prop.max_dt, t_end - st.t});
        set_dt(ops, st.dt);
        Solution sol = quasi_newton_solve(ops, st.w_old, scfg);
        ++step_no;
        if (sol.trace.status != SolverStatus::converged) {
            abort_run("qn_no_convergence");
            return hist;
        }
        if (!sol.is_physical) {
            abort_run("nonphysical_state");
            return hist;
        }
        const double k_eq = stress_intensity(sol.state.pressure, st.mesh, st.half_length);
        const long iters = static_cast<long>(sol.trace.iterations.size());
        const double max_c = sol.trace.max_c();
        TimestepUpdate upd =
            timestep_update(k_eq, st.k_eq_old, prop.critical_sif, st.dt, prop.growth_factor,
                            prop.prop_tol);
        const char* action_name = upd.action == StepAction::propagate ? "propagate"
                                  : upd.action == StepAction::grow    ? "grow"
                                                                      : "correct";
        hist.steps.push_back({step_no, st.t, st.dt, iters, max_c, k_eq, action_name});

        if (upd.action == StepAction::correct) {
            if (upd.fallback && ++fallbacks_in_window > prop.secant_max_corrections) {
                abort_run("secant_fallback_limit");
                return hist;
            }
            st.dt = upd.dt_new;
            continue;
        }

        // accepted state (grow or propagate): time marches
        st.t += st.dt;
        st.w_old = sol.state.aperture;
        st.p_old = sol.state.pressure;
        st.k_eq_old = k_eq;
        fallbacks_in_window = 0;
        KgdAccepted acc;
        acc.t = st.t;
        acc.a = st.half_length;
        acc.iters = iters;
        acc.max_c = max_c;
        acc.x = st.mesh.centers;
        acc.p = sol.state.pressure;
        acc.w = sol.state.aperture;
        hist.accepted.push_back(std::move(acc));

        if (upd.action == StepAction::propagate) {
            // extend until the carried-over state is elastically sub-critical
            int bursts = 0;
            for (;;) {
                st = remesh_on_advance(st, prop.advancement_length);
                ops = build_ops(initial, st.half_length, st.mesh.n_cells, st.dt);
                Vec<double> p0 = linear_solve(ops.elasticity, st.w_old);
                st.p_old = p0;
                st.k_eq_old = stress_intensity(p0, st.mesh, st.half_length);
                if (st.k_eq_old < prop.critical_sif) break;
                if (++bursts > 1000) {
                    abort_run("extension_runaway");
                    return hist;
                }
            }
        } else {
            st.dt = std::min(upd.dt_new, prop.max_dt);
        }
        hist.length.emplace_back(st.t, st.half_length);
    }
    hist.completed = true;
    return hist;
}

} // namespace aqn
