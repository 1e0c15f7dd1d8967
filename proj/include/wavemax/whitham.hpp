#pragma once
// Transform constrained maximizers into solitary-wave solutions of the
// steady equation  -mu phi + K*phi + phi^2 = 0  and verify the physical
// identities the profile must satisfy:
//
//   phi = J^2 f / (2 - (1/3) int f^3),   mu = 2 alpha J^2 / (2 - (1/3) int f^3)
//
// (note phi = (mu / 2 alpha) f pointwise).  The checks are deliberately
// independent of the solver's own residual:
//   * steady residual  ||-mu phi + K*phi + phi^2||_inf / ||phi||_inf
//     (sup norm: the solution concept is pointwise; the L2 version is also
//     reported),
//   * lower-branch identity  phi = (mu - sqrt(mu^2 - 4 K*phi)) / 2,
//   * mass identity  (mu - 1) int phi = int phi^2.

#include <string>

#include "wavemax/grid.hpp"
#include "wavemax/kernel.hpp"
#include "wavemax/maximize.hpp"

namespace wavemax {

struct WaveDiagnostics {
    double steady_residual = 0;     // sup-norm, relative
    double steady_residual_l2 = 0;  // L2-norm, relative
    double branch_residual = 0;     // sup-norm, relative
    double mass_identity_gap = 0;   // relative
    double sup_phi = 0;
    double mu_over_2 = 0;
    double scaling_ratio = 0;       // alpha * sup phi / sup f  (= mu/2)
    bool possible_extreme = false;  // discriminant at x = 0 within clamp
};

struct SolitaryWave {
    GridFunction phi;
    double mu = 0;
    double alpha = 0;
    WaveDiagnostics diagnostics;
};

// ||-mu phi + K*phi + phi^2||_inf / ||phi||_inf, plus the L2 variant through
// the second overload.
inline double steady_residual(const SolitaryWave& w) {
    GridFunction Kphi = convolve(w.phi, 0.5);
    double sup = 0.0, nphi = sup_norm(w.phi);
    if (!(nphi > 0.0))
        throw std::invalid_argument("steady_residual: phi must be nonzero");
    for (int j = 0; j < w.phi.n(); ++j) {
        double r = -w.mu * w.phi.v[j] + Kphi.v[j] + w.phi.v[j] * w.phi.v[j];
        sup = std::max(sup, std::abs(r));
    }
    return sup / nphi;
}

inline double steady_residual_l2(const SolitaryWave& w) {
    GridFunction Kphi = convolve(w.phi, 0.5);
    double nphi = l2_norm(w.phi);
    if (!(nphi > 0.0))
        throw std::invalid_argument("steady_residual_l2: phi must be nonzero");
    double s = 0.0;
    for (int j = 0; j < w.phi.n(); ++j) {
        double r = -w.mu * w.phi.v[j] + Kphi.v[j] + w.phi.v[j] * w.phi.v[j];
        s += r * r;
    }
    return std::sqrt(w.phi.grid->dx * s) / nphi;
}

// Relative sup-norm defect of phi = (mu - sqrt(mu^2 - 4 K*phi)) / 2.  The
// discriminant is clamped at zero for dips within 1e-12 mu^2 (pure round-off
// near a touching crest); anything more negative means phi > mu/2 somewhere,
// which no lower-branch wave satisfies.
inline double branch_identity(const SolitaryWave& w) {
    GridFunction Kphi = convolve(w.phi, 0.5);
    double mu2 = w.mu * w.mu;
    double sup = 0.0, nphi = sup_norm(w.phi);
    if (!(nphi > 0.0))
        throw std::invalid_argument("branch_identity: phi must be nonzero");
    for (int j = 0; j < w.phi.n(); ++j) {
        double disc = mu2 - 4.0 * Kphi.v[j];
        if (disc < -1e-12 * mu2)
            throw std::domain_error(
                "branch_identity: discriminant substantially negative "
                "(profile exceeds mu/2; not a lower-branch wave)");
        double lower = (w.mu - std::sqrt(std::max(disc, 0.0))) / 2.0;
        sup = std::max(sup, std::abs(w.phi.v[j] - lower));
    }
    return sup / nphi;
}

// |(mu - 1) int phi - int phi^2| / int phi^2.
inline double mass_identity(const SolitaryWave& w) {
    double i1 = 0.0, i2 = 0.0;
    for (double t : w.phi.v) {
        i1 += t;
        i2 += t * t;
    }
    i1 *= w.phi.grid->dx;
    i2 *= w.phi.grid->dx;
    if (!(i2 > 0.0))
        throw std::invalid_argument("mass_identity: phi must be nonzero");
    return std::abs((w.mu - 1.0) * i1 - i2) / i2;
}

inline SolitaryWave to_wave(const MaximizerResult& r, const OrliczParams& p) {
    if (!r.converged)
        throw std::invalid_argument("to_wave: maximizer did not converge");
    if (!(r.peak_ratio <= 1.0))
        throw std::domain_error(
            "to_wave: non-physical maximizer, f(0) > alpha (below the "
            "threshold parameter the transform does not yield a wave)");
    const Grid& g = *r.f.grid;
    double i3 = 0.0;
    for (double t : r.f.v) i3 += t * t * t;
    i3 *= g.dx;
    double denom = 2.0 - i3 / 3.0;
    double J2 = r.J * r.J;

    SolitaryWave w;
    w.alpha = p.alpha;
    w.mu = 2.0 * p.alpha * J2 / denom;
    w.phi = GridFunction(g);
    for (int j = 0; j < g.n; ++j) w.phi.v[j] = J2 * r.f.v[j] / denom;

    WaveDiagnostics& d = w.diagnostics;
    d.sup_phi = sup_norm(w.phi);
    d.mu_over_2 = w.mu / 2.0;
    d.scaling_ratio = p.alpha * d.sup_phi / sup_norm(r.f);
    d.steady_residual = steady_residual(w);
    d.steady_residual_l2 = steady_residual_l2(w);
    d.branch_residual = branch_identity(w);
    d.mass_identity_gap = mass_identity(w);
    GridFunction Kphi = convolve(w.phi, 0.5);
    double disc0 = w.mu * w.mu - 4.0 * Kphi.v[g.n / 2];
    d.possible_extreme = disc0 <= 1e-12 * w.mu * w.mu;
    return w;
}

}  // namespace wavemax
