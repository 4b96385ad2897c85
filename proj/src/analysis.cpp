#include "aqn/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace aqn {
namespace {

template <class Real>
Vec<double> apply_map_t(const Ds1Operators& ops, const Vec<double>& w_old_d,
                        MapVariant variant, const Vec<double>& p_d) {
    const std::size_t n = ops.mesh.n_cells;
    Matrix<Real> a = [&] {
        if constexpr (is_dd<Real>) return to_dd(ops.elasticity);
        else return ops.elasticity;
    }();
    Real t(ops.transmissibility);
    Vec<Real> p(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = Real(p_d[i]);
        rhs[i] = Real(ops.source[i] + w_old_d[i]);
    }
    Vec<Real> w = matvec(a, p);
    if (variant == MapVariant::quasi_newton) {
        Vec<Real> out = linear_solve(a + assemble_flux(w, t), rhs);
        return to_double_vec(out);
    }
    // Newton map: p - J(p)^{-1} R(p)
    Vec<Real> res = matvec(a + assemble_flux(w, t), p);
    for (std::size_t i = 0; i < n; ++i) res[i] = rhs[i] - res[i];
    Vec<Real> dp = linear_solve(newton_jacobian_t(a, t, p, w), res);
    Vec<Real> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = p[i] + dp[i];
    return to_double_vec(out);
}

} // namespace

Vec<double> FixedPointMap::apply(const Vec<double>& p) const {
    return precision == Precision::extended ? apply_map_t<DD>(*ops, w_old, variant, p)
                                            : apply_map_t<double>(*ops, w_old, variant, p);
}

Matrix<double> map_jacobian(const FixedPointMap& map, const Vec<double>& p0, double h) {
    const std::size_t n = p0.size();
    Matrix<double> k(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double hj = h * (1.0 + std::fabs(p0[j]));
        Vec<double> pp = p0, pm = p0;
        pp[j] += hj;
        pm[j] -= hj;
        Vec<double> fp = map.apply(pp);
        Vec<double> fm = map.apply(pm);
        for (std::size_t i = 0; i < n; ++i) k(i, j) = (fp[i] - fm[i]) / (2.0 * hj);
    }
    return k;
}

std::vector<RootInfo> find_roots(const Ds1Operators& ops, const Vec<double>& w_old,
                                 std::size_t n_starts, std::uint64_t seed,
                                 const SolverConfig& cfg) {
    const std::size_t n = ops.mesh.n_cells;
    const double e_mod = ops.params.youngs_modulus;
    const DimensionlessGroups g = groups_of(ops.params);
    const double qt = ops.params.injection_rate * ops.params.dt;
    const double w_scale = qt > 0.0 ? std::sqrt(qt) : 1.0;
    Rng rng(seed);

    std::vector<std::pair<std::string, Vec<double>>> endpoints;

    SolverConfig qn_cfg = cfg;
    qn_cfg.variant = SolverVariant::quasi_newton;
    Solution phys = quasi_newton_solve(ops, w_old, qn_cfg);
    if (phys.trace.status == SolverStatus::converged)
        endpoints.emplace_back("qn", phys.state.pressure);

    SolverConfig nw_cfg = cfg;
    nw_cfg.variant = SolverVariant::newton;

    const double box = g.pi1 > 0.0 ? g.pi2 / g.pi1 * e_mod : 0.0;
    for (std::size_t s = 0; s < n_starts; ++s) {
        Vec<double> p0(n);
        for (std::size_t i = 0; i < n; ++i) p0[i] = rng.uniform(-box, box);
        Solution sol = newton_solve(ops, w_old, nw_cfg, p0);
        if (sol.trace.status == SolverStatus::converged)
            endpoints.emplace_back("newton-rand", sol.state.pressure);
    }

    // oscillatory ladder anchored at the physical root's pressure scale
    double pscale = 0.0;
    if (!endpoints.empty()) pscale = norm_inf(endpoints.front().second);
    if (pscale == 0.0) pscale = ops.source.empty() ? 1.0 : ops.source[0] / std::max(1e-300, ops.elasticity(0, 0));
    for (int e = -6; e <= 2; ++e) {
        for (double sgn : {1.0, -1.0}) {
            Vec<double> p0(n);
            const double s = pscale * std::pow(10.0, e);
            for (std::size_t i = 0; i < n; ++i) p0[i] = sgn * (i % 2 == 0 ? s : -s);
            Solution sol = newton_solve(ops, w_old, nw_cfg, p0);
            if (sol.trace.status == SolverStatus::converged)
                endpoints.emplace_back("newton-osc", sol.state.pressure);
        }
    }

    std::vector<RootInfo> roots;
    for (auto& [origin, p] : endpoints) {
        bool dup = false;
        for (const RootInfo& r : roots) {
            Vec<double> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = p[i] - r.root.pressure[i];
            double ref = std::max(norm2(p), norm2(r.root.pressure));
            if (ref == 0.0 || norm2(d) / ref < 1e-6) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        RootInfo info;
        info.root.pressure = p;
        info.root.aperture = matvec(ops.elasticity, p);
        double mw = 0.0;
        for (double v : info.root.aperture) mw = std::min(mw, v);
        info.min_w_dimless = mw / w_scale;
        info.is_physical = info.min_w_dimless >= cfg.eps0;
        info.origin = origin;
        roots.push_back(std::move(info));
    }
    return roots;
}

std::pair<double, double> SweepGrid::point(std::size_t index) const {
    const std::size_t i1 = index / n2;
    const std::size_t i2 = index % n2;
    auto log_at = [](double lo, double hi, std::size_t k, std::size_t count) {
        if (count < 2) return lo;
        double f = static_cast<double>(k) / static_cast<double>(count - 1);
        return std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
    };
    return {log_at(pi1_min, pi1_max, i1, n1), log_at(pi2_min, pi2_max, i2, n2)};
}

namespace {

void run_parallel(std::size_t n_cases, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_cases; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n_cases) return;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t index) {
    Rng r(seed ^ (0x51cf3702c2a1a253ULL + index * 0x9e3779b97f4a7c15ULL));
    return r.next();
}

} // namespace

SweepResult stability_sweep(const SweepGrid& grid, std::size_t n_c, const SweepConfig& cfg) {
    SweepResult result;
    result.grid = grid;
    result.seed = cfg.seed;
    result.cases.resize(grid.size());

    run_parallel(grid.size(), cfg.workers, [&](std::size_t idx) {
        SweepCase& c = result.cases[idx];
        c.index = idx;
        std::tie(c.pi1, c.pi2) = grid.point(idx);
        try {
            SolverConfig scfg = cfg.solver;
            scfg.precision = Precision::extended;
            Ds1Operators ops = Ds1Operators::build(case_from_groups(c.pi1, c.pi2, n_c));
            Vec<double> w_old(n_c, 0.0);

            SolverConfig qn_cfg = scfg;
            qn_cfg.variant = SolverVariant::quasi_newton;
            Solution qn = quasi_newton_solve(ops, w_old, qn_cfg);
            if (qn.trace.status != SolverStatus::converged) {
                c.status = "failed:qn_no_convergence";
                return;
            }
            c.iters = static_cast<long>(qn.trace.iterations.size());
            c.max_c = qn.trace.max_c();
            c.min_w_dimless = qn.trace.min_w_dimless();

            const std::uint64_t cs = case_seed(cfg.seed, idx);
            std::vector<RootInfo> roots = find_roots(ops, w_old, cfg.n_starts, cs, scfg);
            const RootInfo* phys = nullptr;
            const RootInfo* nonphys = nullptr;
            for (const RootInfo& r : roots) {
                if (r.is_physical && !phys) phys = &r;
                if (!r.is_physical && !nonphys) nonphys = &r;
            }
            if (!phys) {
                c.status = "failed:no_physical_root";
                return;
            }

            FixedPointMap qn_map{&ops, w_old, MapVariant::quasi_newton, Precision::extended};
            FixedPointMap nw_map{&ops, w_old, MapVariant::newton, Precision::extended};
            c.rho_qn_physical = eigenvalues(map_jacobian(qn_map, phys->root.pressure)).rho;
            c.rho_newton_physical = eigenvalues(map_jacobian(nw_map, phys->root.pressure)).rho;
            if (nonphys) {
                c.rho_qn_nonphysical =
                    eigenvalues(map_jacobian(qn_map, nonphys->root.pressure)).rho;
                c.rho_newton_nonphysical =
                    eigenvalues(map_jacobian(nw_map, nonphys->root.pressure)).rho;

                // restart from the 0.01%-perturbed nonphysical root
                Rng rng(cs ^ 0xabcdef1234567890ULL);
                Vec<double> pert = nonphys->root.pressure;
                for (double& v : pert) v *= 1.0 + 1e-4 * rng.sign();
                Solution restart = quasi_newton_solve(ops, w_old, qn_cfg, pert);
                if (restart.trace.status == SolverStatus::converged) {
                    c.restart_iters = static_cast<long>(restart.trace.iterations.size());
                    c.restart_physical = restart.is_physical;
                }
                c.status = "ok";
            } else {
                c.status = "no_nonphysical";
            }
        } catch (const std::exception& e) {
            c.status = std::string("failed:") + e.what();
        }
    });
    return result;
}

SweepResult contraction_sweep(const SweepGrid& grid, std::size_t n_c, const SweepConfig& cfg) {
    SweepResult result;
    result.grid = grid;
    result.seed = cfg.seed;
    result.cases.resize(grid.size());

    run_parallel(grid.size(), cfg.workers, [&](std::size_t idx) {
        SweepCase& c = result.cases[idx];
        c.index = idx;
        std::tie(c.pi1, c.pi2) = grid.point(idx);
        try {
            SolverConfig scfg = cfg.solver;
            scfg.precision = Precision::extended;
            scfg.variant = SolverVariant::quasi_newton;
            Ds1Operators ops = Ds1Operators::build(case_from_groups(c.pi1, c.pi2, n_c));
            Vec<double> w_old(n_c, 0.0);
            Solution sol = quasi_newton_solve(ops, w_old, scfg);
            if (sol.trace.status != SolverStatus::converged) {
                c.status = "failed:qn_no_convergence";
                return;
            }
            c.iters = static_cast<long>(sol.trace.iterations.size());
            c.max_c = sol.trace.max_c();
            c.min_w_dimless = sol.trace.min_w_dimless();
            c.status = "ok";
        } catch (const std::exception& e) {
            c.status = std::string("failed:") + e.what();
        }
    });
    return result;
}

} // namespace aqn
