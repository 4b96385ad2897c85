// Fixed-point maps of both solvers, numerical map Jacobians and spectral
// radii, multi-start root finding, and the (Pi1, Pi2) stability and
// contraction sweeps.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aqn/eig.hpp"
#include "aqn/solvers.hpp"

namespace aqn {

// splitmix64-based generator: portable, deterministic, seedable per case.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double sign() { return (next() & 1u) ? 1.0 : -1.0; }
};

enum class MapVariant { quasi_newton, newton };

// One application of the solver's fixed-point map at a given pressure.
struct FixedPointMap {
    const Ds1Operators* ops = nullptr;
    Vec<double> w_old;
    MapVariant variant = MapVariant::quasi_newton;
    Precision precision = Precision::extended;

    Vec<double> apply(const Vec<double>& p) const;
};

// Central-difference Jacobian of the map, step h * (1 + |p0_j|) per column.
Matrix<double> map_jacobian(const FixedPointMap& map, const Vec<double>& p0, double h = 1e-6);

struct RootInfo {
    State root;
    bool is_physical = false;
    double min_w_dimless = 0.0;
    std::string origin;  // "qn", "newton-rand", "newton-osc", "newton-zero"
};

// Quasi-Newton from the designed path plus multi-start Newton: n_starts
// random seeds uniform in p/E within [-Pi2/Pi1, Pi2/Pi1] and a ladder of
// sign-alternating oscillatory seeds.  Converged endpoints are deduplicated
// at relative distance 1e-6.  Absence of a nonphysical root is reported by
// the caller, not an error.
std::vector<RootInfo> find_roots(const Ds1Operators& ops, const Vec<double>& w_old,
                                 std::size_t n_starts, std::uint64_t seed,
                                 const SolverConfig& cfg);

struct SweepGrid {
    double pi1_min = 1e-17, pi1_max = 1.5e-1;
    double pi2_min = 1e-5, pi2_max = 2e-2;
    std::size_t n1 = 20, n2 = 20;

    std::size_t size() const { return n1 * n2; }
    std::pair<double, double> point(std::size_t index) const;
};

struct SweepCase {
    std::size_t index = 0;
    double pi1 = 0.0, pi2 = 0.0;
    double rho_qn_physical = std::numeric_limits<double>::quiet_NaN();
    double rho_qn_nonphysical = std::numeric_limits<double>::quiet_NaN();
    double rho_newton_physical = std::numeric_limits<double>::quiet_NaN();
    double rho_newton_nonphysical = std::numeric_limits<double>::quiet_NaN();
    long restart_iters = -1;
    bool restart_physical = false;
    double max_c = std::numeric_limits<double>::quiet_NaN();
    double min_w_dimless = std::numeric_limits<double>::quiet_NaN();
    long iters = -1;
    std::string status;  // "ok", "no_nonphysical", or "failed:<reason>"
};

struct SweepResult {
    SweepGrid grid;
    std::uint64_t seed = 0;
    std::vector<SweepCase> cases;  // ordered by grid index
};

struct SweepConfig {
    SolverConfig solver;        // precision forced to extended inside the sweeps
    std::size_t n_starts = 12;  // random Newton seeds per case in find_roots
    std::size_t workers = 1;
    std::uint64_t seed = 1;
};

// Roots, spectral radii of both maps at both roots, and the 0.01%-perturbed
// restart, per grid case (n_c = 4 by default in the configs that call this).
SweepResult stability_sweep(const SweepGrid& grid, std::size_t n_c, const SweepConfig& cfg);

// Dry-start designed-path contraction diagnostics per grid case (n_c = 15).
SweepResult contraction_sweep(const SweepGrid& grid, std::size_t n_c, const SweepConfig& cfg);

} // namespace aqn
