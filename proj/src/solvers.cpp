#include "aqn/solvers.hpp"

#include <cmath>

namespace aqn {
namespace {

struct Scales {
    double w_scale;      // sqrt(Q dt), or a fallback when no injection
    double front_abs;    // absolute |w| floor for the reached front
};

Scales make_scales(const Ds1Operators& ops, const Vec<double>& w_old, const SolverConfig& cfg) {
    double qt = ops.params.injection_rate * ops.params.dt;
    double s = qt > 0.0 ? std::sqrt(qt) : norm_inf(w_old);
    if (s == 0.0) s = 1.0;
    return {s, cfg.front_floor * s};
}

// Count of leading cells reached by fluid.  Uses |w| against a round-off
// floor: a cell whose aperture dips slightly negative on arrival has been
// reached, while cells the flux stencil never touched hold an exact zero.
template <class Real>
std::size_t front_count(const Vec<Real>& w, double floor_abs) {
    std::size_t c = 0;
    for (const Real& v : w)
        if (to_double(abs(v)) > floor_abs) ++c;
    return c;
}

template <class Real>
double min_of(const Vec<Real>& w) {
    double m = 0.0;
    for (const Real& v : w) m = std::min(m, to_double(v));
    return m;
}

template <class Real>
struct Problem {
    Matrix<Real> a;
    Real t;
    Vec<Real> q;
};

template <class Real>
Problem<Real> cast_problem(const Ds1Operators& ops);

template <>
Problem<double> cast_problem(const Ds1Operators& ops) {
    return {ops.elasticity, ops.transmissibility, ops.source};
}

template <>
Problem<DD> cast_problem(const Ds1Operators& ops) {
    return {to_dd(ops.elasticity), DD(ops.transmissibility), to_dd(ops.source)};
}

template <class Real>
Solution qn_run(const Ds1Operators& ops, const Vec<double>& w_old_d, const SolverConfig& cfg,
                const std::optional<Vec<double>>& p_init) {
    const std::size_t n = ops.mesh.n_cells;
    const Problem<Real> pr = cast_problem<Real>(ops);
    const Scales sc = make_scales(ops, w_old_d, cfg);

    Vec<Real> w_old(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        w_old[i] = Real(w_old_d[i]);
        rhs[i] = pr.q[i] + w_old[i];
    }
    const double rhs_norm = to_double(norm2(rhs));

    Vec<Real> w_mat = w_old;  // designed path: F built from w^n at v = 1
    if (p_init) {
        Vec<Real> p0(n);
        for (std::size_t i = 0; i < n; ++i) p0[i] = Real((*p_init)[i]);
        w_mat = matvec(pr.a, p0);
    }

    Solution sol;
    Vec<Real> w_prev, w_cur, p;
    for (std::size_t v = 1; v <= cfg.max_iters; ++v) {
        Matrix<Real> f = assemble_flux(w_mat, pr.t);
        Matrix<Real> sys = pr.a + f;
        try {
            p = linear_solve(sys, rhs);
        } catch (const SingularMatrixError&) {
            sol.trace.status = SolverStatus::linear_solve_failure;
            break;
        }
        // flux-form aperture keeps exact zeros beyond the fluid front
        Vec<Real> w_new = rhs;
        Vec<Real> fp = matvec(f, p);
        for (std::size_t i = 0; i < n; ++i) w_new[i] -= fp[i];

        IterationRecord rec;
        rec.min_w_dimless = min_of(w_new) / sc.w_scale;
        rec.front_index = front_count(w_new, sc.front_abs);
        Vec<Real> res = matvec(pr.a + assemble_flux(w_new, pr.t), p);
        for (std::size_t i = 0; i < n; ++i) res[i] -= rhs[i];
        rec.residual_norm = to_double(norm2(res));

        bool converged = false;
        if (!w_cur.empty()) {
            Vec<Real> dw(n);
            for (std::size_t i = 0; i < n; ++i) dw[i] = w_new[i] - w_cur[i];
            double step = to_double(norm2(dw));
            if (!w_prev.empty()) {
                Vec<Real> dprev(n);
                for (std::size_t i = 0; i < n; ++i) dprev[i] = w_cur[i] - w_prev[i];
                double den = to_double(norm2(dprev));
                rec.lipschitz_c = den > 0.0 ? step / den : 0.0;
            }
            double rms = step / std::sqrt(static_cast<double>(n));
            converged = rms < cfg.rms_tol && rec.residual_norm <= cfg.res_tol * rhs_norm;
        }

        sol.trace.iterations.push_back(rec);
        if (cfg.keep_iterates) {
            sol.trace.pressures.push_back(to_double_vec(p));
            sol.trace.apertures.push_back(to_double_vec(w_new));
        }
        w_prev = std::move(w_cur);
        w_cur = w_new;
        w_mat = std::move(w_new);
        if (converged) {
            sol.trace.status = SolverStatus::converged;
            break;
        }
    }
    if (!w_cur.empty()) {
        sol.state.pressure = to_double_vec(p);
        sol.state.aperture = to_double_vec(w_cur);
        sol.is_physical = min_of(w_cur) >= cfg.eps0 * sc.w_scale;
    }
    return sol;
}

template <class Real>
Solution newton_run(const Ds1Operators& ops, const Vec<double>& w_old_d, const SolverConfig& cfg,
                    const Vec<double>& p_init) {
    const std::size_t n = ops.mesh.n_cells;
    const Problem<Real> pr = cast_problem<Real>(ops);
    const Scales sc = make_scales(ops, w_old_d, cfg);

    Vec<Real> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = pr.q[i] + Real(w_old_d[i]);
    const double rhs_norm = to_double(norm2(rhs));

    Vec<Real> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = Real(p_init[i]);

    Solution sol;
    Vec<Real> w_prev, w_cur;
    for (std::size_t v = 1; v <= cfg.max_iters; ++v) {
        Vec<Real> w = matvec(pr.a, p);
        Matrix<Real> f = assemble_flux(w, pr.t);
        Vec<Real> res = matvec(pr.a + f, p);
        for (std::size_t i = 0; i < n; ++i) res[i] = rhs[i] - res[i];  // -R
        Matrix<Real> j = newton_jacobian_t(pr.a, pr.t, p, w);
        Vec<Real> dp;
        try {
            dp = linear_solve(j, res);
        } catch (const SingularMatrixError&) {
            sol.trace.status = SolverStatus::linear_solve_failure;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) p[i] += dp[i];
        Vec<Real> w_new = matvec(pr.a, p);

        IterationRecord rec;
        rec.min_w_dimless = min_of(w_new) / sc.w_scale;
        rec.front_index = front_count(w_new, sc.front_abs);
        Vec<Real> res_new = matvec(pr.a + assemble_flux(w_new, pr.t), p);
        for (std::size_t i = 0; i < n; ++i) res_new[i] -= rhs[i];
        rec.residual_norm = to_double(norm2(res_new));

        bool converged = false;
        if (!w_cur.empty()) {
            Vec<Real> dw(n);
            for (std::size_t i = 0; i < n; ++i) dw[i] = w_new[i] - w_cur[i];
            double step = to_double(norm2(dw));
            if (!w_prev.empty()) {
                Vec<Real> dprev(n);
                for (std::size_t i = 0; i < n; ++i) dprev[i] = w_cur[i] - w_prev[i];
                double den = to_double(norm2(dprev));
                rec.lipschitz_c = den > 0.0 ? step / den : 0.0;
            }
            double rms = step / std::sqrt(static_cast<double>(n));
            converged = rms < cfg.rms_tol && rec.residual_norm <= cfg.res_tol * rhs_norm;
        }

        sol.trace.iterations.push_back(rec);
        if (cfg.keep_iterates) {
            sol.trace.pressures.push_back(to_double_vec(p));
            sol.trace.apertures.push_back(to_double_vec(w_new));
        }
        w_prev = std::move(w_cur);
        w_cur = std::move(w_new);
        if (converged) {
            sol.trace.status = SolverStatus::converged;
            break;
        }
    }
    if (!w_cur.empty()) {
        sol.state.pressure = to_double_vec(p);
        sol.state.aperture = to_double_vec(w_cur);
        sol.is_physical = min_of(w_cur) >= cfg.eps0 * sc.w_scale;
    }
    return sol;
}

} // namespace

Solution quasi_newton_solve(const Ds1Operators& ops, const Vec<double>& w_old,
                            const SolverConfig& cfg,
                            const std::optional<Vec<double>>& p_init) {
    return cfg.precision == Precision::extended ? qn_run<DD>(ops, w_old, cfg, p_init)
                                                : qn_run<double>(ops, w_old, cfg, p_init);
}

Solution newton_solve(const Ds1Operators& ops, const Vec<double>& w_old, const SolverConfig& cfg,
                      const Vec<double>& p_init) {
    return cfg.precision == Precision::extended ? newton_run<DD>(ops, w_old, cfg, p_init)
                                                : newton_run<double>(ops, w_old, cfg, p_init);
}

} // namespace aqn
