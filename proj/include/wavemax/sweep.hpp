#pragma once
// Continuation of maximizers along the parameter alpha and bisection
// estimation of the threshold alpha_0 below which the maximizer's peak
// touches alpha (and the wave transform degenerates).
//
// Sweeps solve cold at the largest alpha and continue downward with warm
// starts: small-alpha profiles are the taller, narrower, harder ones, and
// continuation from the neighboring solution keeps the fixed point in its
// basin.  alpha J^2 is strictly decreasing in alpha along the branch, which
// the sweep reports but never enforces.

#include <algorithm>
#include <string>
#include <vector>

#include "wavemax/maximize.hpp"

namespace wavemax {

struct SweepRow {
    double alpha = 0;
    double J = 0;
    double alphaJ2 = 0;
    double peak_ratio = 0;
    double mu = 0;
    bool converged = false;
    // Extra diagnostics carried along for reporting.
    double residual = 0;
    int iterations = 0;
    bool resolved = false;  // decay test passed; false => row inconclusive
    std::string note;       // per-row error/advice text, empty when clean
};

inline SweepRow make_sweep_row(double alpha, const MaximizerResult& r) {
    SweepRow row;
    row.alpha = alpha;
    row.J = r.J;
    row.alphaJ2 = r.alphaJ2;
    row.peak_ratio = r.peak_ratio;
    row.mu = r.mu;
    row.converged = r.converged;
    row.residual = r.residual;
    row.iterations = r.iterations;
    row.resolved = r.resolved;
    row.note = r.advice;
    return row;
}

// Solve at every alpha in the (ascending) list.  Cold start at the largest,
// then warm-start each smaller alpha from its upper neighbor's profile.
// Per-row failures are recorded in the row, never thrown.
inline std::vector<SweepRow> alpha_sweep(const std::vector<double>& alphas,
                                         const Grid& g,
                                         const SolverConfig& cfg = {},
                                         bool cold = false) {
    if (alphas.empty())
        throw std::invalid_argument("alpha_sweep: empty alpha list");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0))
            throw std::invalid_argument("alpha_sweep: alphas must be positive");
        if (i > 0 && !(alphas[i] > alphas[i - 1]))
            throw std::invalid_argument("alpha_sweep: alphas must be strictly ascending");
    }
    std::vector<SweepRow> rows(alphas.size());
    std::optional<GridFunction> carry;
    for (int i = static_cast<int>(alphas.size()) - 1; i >= 0; --i) {
        double al = alphas[i];
        SweepRow& row = rows[i];
        try {
            OrliczParams p = make_orlicz(al);
            std::optional<GridFunction> start;
            if (!cold && carry) {
                // A profile gauge-normalized for the previous alpha is not
                // normalized for this one; renormalize before reuse.
                GridFunction f = *carry;
                double lam = gauge_norm(f, p);
                for (double& t : f.v) t /= lam;
                start = std::move(f);
            }
            MaximizerResult r = solve_max(p, g, cfg, start);
            row = make_sweep_row(al, r);
            if (r.converged) carry = std::move(r.f);
        } catch (const std::exception& e) {
            row.alpha = al;
            row.converged = false;
            row.note = e.what();
            carry.reset();  // do not continue from a poisoned state
        }
    }
    return rows;
}

struct ThresholdEstimate {
    double lo = 0;
    double hi = 0;
    double delta = 1e-6;  // relative peak margin in the predicate
};

namespace detail {

// P(alpha): the maximizer converges with its peak strictly below alpha.
inline bool threshold_predicate(double alpha, const Grid& g,
                                const SolverConfig& cfg, double delta) {
    try {
        MaximizerResult r = solve_max(make_orlicz(alpha), g, cfg);
        return r.converged && r.peak_ratio < 1.0 - delta;
    } catch (const std::exception&) {
        return false;  // a failed solve counts as "peak touches alpha"
    }
}

}  // namespace detail

// Bisect the predicate P(alpha) = (converged and f(0) < alpha (1 - delta))
// to a bracket of width <= tol.  Each evaluation is an independent cold
// solve, so the result does not depend on visiting order.
inline ThresholdEstimate estimate_alpha0(double lo, double hi, double tol,
                                         const Grid& g,
                                         const SolverConfig& cfg = {}) {
    if (!(lo > 0.0 && hi > lo))
        throw std::invalid_argument("estimate_alpha0: need 0 < lo < hi");
    if (!(tol > 0.0))
        throw std::invalid_argument("estimate_alpha0: tol must be positive");
    const double delta = 1e-6;
    bool plo = detail::threshold_predicate(lo, g, cfg, delta);
    bool phi = detail::threshold_predicate(hi, g, cfg, delta);
    if (plo == phi)
        throw std::domain_error("bracket does not straddle threshold");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (detail::threshold_predicate(mid, g, cfg, delta) == phi)
            hi = mid;
        else
            lo = mid;
    }
    return ThresholdEstimate{lo, hi, delta};
}

}  // namespace wavemax
