#pragma once
// Constrained maximization of J^2 = <f, K_{1/2}*f> over bell-shaped f with
// N_Psi(f) = 1, via the Euler-Lagrange fixed point
//     K*f = (J^2 / <f, Psi'(f)>) Psi'(f)
// iterated as f <- (Psi')^{-1}(lambda K*f), lambda = pairing/J^2, with
// negative clamp, symmetric-rearrangement projection, and gauge
// renormalization after every step.
//
// The plain iteration contracts like 1 - O(1/alpha^2) near the fixed point,
// which is hopeless at large alpha, so solve_max layers two accelerators on
// top of it, both judged by the true EL residual so they cannot change what
// "converged" means.
//
// 1. Preconditioned step: on the f < alpha branch the EL equation is
//    equivalent to (2 alpha - lambda K*) f = f^2, inverted spectrally as
//    f_hat <- FFT(f^2) / (2 alpha - lambda m(xi)).  The inversion is only
//    trustworthy while the denominator stays positive -- it equals
//    2 alpha (1 - m(xi)/mu_eff) and flips sign at low frequency the moment
//    the iterate's effective speed mu_eff dips below 1 (which happens
//    transiently on domains too small for a localized wave).  Guards:
//    engage only after warmup, only while max f < 0.9 alpha and
//    2 alpha - lambda > 1e-8 alpha, and retire this path for good if 60
//    consecutive preconditioned steps fail to improve the residual.
//
// 2. Anderson mixing on plain-step streaks: where the preconditioned step
//    is barred or stalls (near-threshold domains whose solution is a gentle
//    cnoidal or a constant, e.g. alpha = 20 on L = 64, where its
//    linearization has gain > 1 at the first Fourier mode), the plain map
//    crawls at its dominant-eigenvalue rate.  Depth-m Anderson
//    extrapolation over the projected plain map removes the slow modes:
//    measured on that alpha = 20 case, 67k plain iterations become ~90.
//    Safeguards: history is cleared by preconditioned steps, theta changes,
//    and overshoots (residual increase after an extrapolated step triggers
//    a short cooldown instead of theta damping); the correction is skipped
//    when the least-squares system is degenerate or the correction norm is
//    absurd; extrapolated iterates are re-projected onto the constraint
//    (clamp, rearrange, renormalize).

#include <optional>
#include <string>

#include "wavemax/grid.hpp"
#include "wavemax/kernel.hpp"
#include "wavemax/orlicz.hpp"
#include "wavemax/rearrange.hpp"

namespace wavemax {

struct SolverConfig {
    double tol = 1e-10;        // relative EL-residual target
    int max_iter = 10000;
    double theta = 1.0;        // damping; halved on residual increase
    int rearrange_every = 1;
    bool accelerate = true;    // guarded preconditioned step
    int warmup = 5;            // plain steps before acceleration may engage
    int anderson_depth = 4;    // extrapolation depth on plain streaks; 0 = off

    void validate() const {
        if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
        if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
        if (!(theta > 0.0 && theta <= 1.0))
            throw std::invalid_argument("SolverConfig: theta must lie in (0, 1]");
        if (rearrange_every < 1)
            throw std::invalid_argument("SolverConfig: rearrange_every must be >= 1");
        if (anderson_depth < 0)
            throw std::invalid_argument("SolverConfig: anderson_depth must be >= 0");
    }
};

struct MaximizerResult {
    GridFunction f;
    double J = 0;             // sqrt of the quadratic form at f
    double pairing = 0;       // <f, Psi'(f)>
    double residual = 0;      // relative EL residual
    int iterations = 0;
    bool converged = false;
    double peak_ratio = 0;    // f(0)/alpha

    // Diagnostics
    double alphaJ2 = 0;
    double mu = 0;                 // 2 alpha J^2 / (2 - int f^3 / 3)
    double decay_ratio = 0;        // f(L-dx)/f(0)
    double truncation_ratio = 0;   // f(L/2)/f(0)
    bool resolved = false;         // decay_ratio < 1e-6: domain held the tail
    int accel_steps = 0;
    int plain_steps = 0;
    int anderson_steps = 0;
    double theta_final = 1.0;
    int j_decreases = 0;           // iterations where J^2 went down
    std::string advice;            // non-empty when something needs attention
};

namespace detail {

// Compactly supported C-infinity bump q(x) = c exp(-1/(1-x^2)) on |x| < 1
// with c fixed by int (q^2 - q^3/3) dx = 1.
struct BumpConstants {
    double c;   // amplitude
    double A2;  // int exp(-2/(1-x^2)) dx
    double A3;  // int exp(-3/(1-x^2)) dx
};

inline const BumpConstants& bump_constants() {
    static const BumpConstants b = [] {
        // Composite Gauss-Legendre on [-1, 1]; the integrand is flat to all
        // orders at the endpoints, so convergence is spectral.
        auto moment = [](double k) {
            const int panels = 64;
            double w = 2.0 / panels, total = 0.0;
            for (int p = 0; p < panels; ++p) {
                double mid = -1.0 + (p + 0.5) * w, hw = 0.5 * w, s = 0.0;
                for (int q = 0; q < 16; ++q) {
                    double x = mid + hw * kGL16x[q];
                    double d = 1.0 - x * x;
                    s += kGL16w[q] * (d > 0 ? std::exp(-k / d) : 0.0);
                }
                total += s * hw;
            }
            return total;
        };
        double A2 = moment(2.0), A3 = moment(3.0);
        // Smallest positive root of c^2 A2 - c^3 A3/3 = 1; the cubic rises
        // from -1 at c = 0 to its maximum at c = 2 A2/A3, so the root is
        // bracketed by [0, 2 A2/A3].
        double lo = 0.0, hi = 2.0 * A2 / A3;
        for (int it = 0; it < 200; ++it) {
            double c = 0.5 * (lo + hi);
            double G = c * c * A2 - c * c * c * A3 / 3.0 - 1.0;
            (G < 0.0 ? lo : hi) = c;
            if (hi - lo <= 1e-16 * hi) break;
        }
        return BumpConstants{0.5 * (lo + hi), A2, A3};
    }();
    return b;
}

}  // namespace detail

// Scaled bump ansatz: f(x) = alpha q(alpha^3 x), switching to the
// mu-rescaled variant q~(x) = mu q(mu^2 eta x), mu = 1/(1+alpha^2),
// eta = ||q||_2^2 - (mu/3)||q||_3^3, whenever the plain support 1/alpha^3
// fails the grid (too wide for the domain or narrower than a few cells).
// The result is gauge-normalized.
inline GridFunction initial_guess(const OrliczParams& p, const Grid& g) {
    const auto& b = detail::bump_constants();
    double al = p.alpha;
    double half = 1.0 / (al * al * al);
    bool scaled = (half > 0.5 * g.L) || (half < 8.0 * g.dx);
    double scale, amp;
    if (!scaled) {
        scale = al * al * al;
        amp = al * b.c;
    } else {
        double q2 = b.c * b.c * b.A2;
        double q3 = b.c * b.c * b.c * b.A3;
        double mu = 1.0 / (1.0 + al * al);
        double eta = q2 - (mu / 3.0) * q3;
        scale = mu * mu * eta * al * al * al;
        amp = al * mu * b.c;
    }
    if (1.0 / scale > 0.98 * g.L)
        throw std::invalid_argument(
            "initial_guess: bump support does not fit the domain even after "
            "rescaling; increase l");
    GridFunction f(g);
    int inside = 0;
    for (int j = 0; j < g.n; ++j) {
        double arg = scale * g.x[j];
        if (std::abs(arg) < 1.0) {
            f.v[j] = amp * std::exp(-1.0 / (1.0 - arg * arg));
            ++inside;
        }
    }
    if (inside < 3)
        throw std::invalid_argument(
            "initial_guess: bump support is unresolved on this grid; "
            "increase n or l");
    double lam = gauge_norm(f, p);
    for (double& t : f.v) t /= lam;
    return f;
}

// Relative EL residual ||K*f - (J^2/pairing) Psi'(f)||_2 / ||K*f||_2.
inline double el_residual(const GridFunction& f, const OrliczParams& p) {
    GridFunction Kf = convolve(f, 0.5);
    double nKf = l2_norm(Kf);
    if (!(nKf > 0.0))
        throw std::invalid_argument("el_residual: K*f vanishes");
    double J2 = inner_product(f, Kf);
    double lam = J2 / pairing(f, p);
    double s = 0.0;
    for (int j = 0; j < f.n(); ++j) {
        double r = Kf.v[j] - lam * psi_prime(f.v[j], p);
        s += r * r;
    }
    return std::sqrt(f.grid->dx * s) / nKf;
}

// One damped fixed-point step (the plain iteration; acceleration lives only
// inside solve_max).  Enforces the documented preconditions.
inline GridFunction el_step(const GridFunction& f, const OrliczParams& p,
                            double theta) {
    if (std::abs(gauge_norm(f, p) - 1.0) > 1e-8)
        throw std::invalid_argument("el_step: input must be gauge-normalized");
    GridFunction Kf = convolve(f, 0.5);
    double J2 = inner_product(f, Kf);
    if (!(J2 > 0.0))
        throw std::invalid_argument("el_step: degenerate input, J^2 = 0");
    double lam = pairing(f, p) / J2;
    GridFunction out(*f.grid);
    for (int j = 0; j < f.n(); ++j) {
        double fr = psi_prime_inv(std::max(lam * Kf.v[j], 0.0), p);
        out.v[j] = std::max((1.0 - theta) * f.v[j] + theta * fr, 0.0);
    }
    out = symmetric_rearrangement(out);
    double g = gauge_norm(out, p);
    for (double& t : out.v) t /= g;
    return out;
}

// All result fields evaluated directly and consistently at one
// gauge-normalized profile: J, pairing, EL residual, wave-speed diagnostics.
// solve_max finishes through here, and it also serves stored profiles coming
// back in through the CLI.  Iteration counters are the caller's to fill;
// converged is judged by the freshly measured residual against tol.
inline MaximizerResult evaluate_state(GridFunction f, const OrliczParams& p,
                                      double tol) {
    if (!f.grid) throw std::invalid_argument("evaluate_state: empty profile");
    const Grid& g = *f.grid;
    const double al = p.alpha;
    GridFunction Kf = convolve(f, 0.5);
    double J2 = inner_product(f, Kf);
    double pr = pairing(f, p);
    double res;
    {
        double nKf2 = 0.0, nr2 = 0.0, ratio = J2 / pr;
        for (int j = 0; j < g.n; ++j) {
            double r = Kf.v[j] - ratio * psi_prime(f.v[j], p);
            nr2 += r * r;
            nKf2 += Kf.v[j] * Kf.v[j];
        }
        res = std::sqrt(nr2 / nKf2);
    }
    double i3 = 0.0;
    for (double t : f.v) i3 += t * t * t;
    i3 *= g.dx;

    MaximizerResult out;
    out.converged = res <= tol;
    out.J = std::sqrt(std::max(J2, 0.0));
    out.pairing = pr;
    out.residual = res;
    out.alphaJ2 = al * J2;
    out.mu = 2.0 * al * J2 / (2.0 - i3 / 3.0);
    double f0 = *std::max_element(f.v.begin(), f.v.end());
    out.peak_ratio = f0 / al;
    out.decay_ratio = f.v[g.n - 1] / f0;
    out.truncation_ratio = f.v[g.n / 2 + g.n / 4] / f0;
    out.resolved = out.decay_ratio < 1e-6;
    out.f = std::move(f);
    if (!out.converged) {
        out.advice =
            "did not reach the residual target within max_iter; raise "
            "max_iter or loosen tol";
    } else if (out.truncation_ratio > 1e-8) {
        out.advice =
            "profile has not vanished by |x| = L/2; the domain may be too "
            "small for a localized wave at this alpha (increase l)";
    }
    return out;
}

inline MaximizerResult solve_max(
    const OrliczParams& p, const Grid& g, const SolverConfig& cfg = {},
    const std::optional<GridFunction>& warm = std::nullopt) {
    cfg.validate();
    const double al = p.alpha;
    GridFunction f = warm ? *warm : initial_guess(p, g);
    if (warm) {
        if (!f.grid->same_as(g))
            throw std::invalid_argument("solve_max: warm start on a different grid");
        for (double t : f.v)
            if (t < 0.0)
                throw std::invalid_argument("solve_max: warm start must be nonnegative");
        double lam0 = gauge_norm(f, p);
        if (std::abs(lam0 - 1.0) > 1e-8)
            throw std::invalid_argument("solve_max: warm start must be gauge-normalized");
    }

    SymbolTable sym = make_symbol_table(g, 0.5);
    auto& ws = dft_workspace(g.n);

    int accel_steps = 0, plain_steps = 0, anderson_steps = 0, j_decreases = 0;
    double theta = cfg.theta;
    double prev_res = std::numeric_limits<double>::infinity();
    double best_res = std::numeric_limits<double>::infinity();
    double prev_J2 = -1.0;
    bool accel_ok = cfg.accelerate;
    int stale = 0;
    int cooldown = 0;
    bool last_was_aa = false;
    // The extrapolation assumes one fixed map across a streak, so it stays
    // off when rearrangement is applied only intermittently.
    const bool aa_allowed = cfg.anderson_depth > 0 && cfg.rearrange_every == 1;
    int it = 1;
    double res = std::numeric_limits<double>::infinity();

    std::vector<std::complex<double>> half;
    GridFunction work(g);
    std::vector<std::vector<double>> hist_x, hist_g;  // plain-streak history

    auto project = [&](GridFunction& v) {
        for (double& t : v.v) t = std::max(t, 0.0);
        v = symmetric_rearrangement(v);
        double lam = gauge_norm(v, p, 1.0);
        for (double& t : v.v) t /= lam;
    };
    auto clear_hist = [&] {
        hist_x.clear();
        hist_g.clear();
    };
    auto dot = [n = g.n](const std::vector<double>& a,
                         const std::vector<double>& b) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a[j] * b[j];
        return s;
    };

    for (; it <= cfg.max_iter; ++it) {
        GridFunction Kf = convolve(f, sym);
        double J2 = inner_product(f, Kf);
        double pr = pairing(f, p);
        double nKf2 = 0.0, nr2 = 0.0, fmax = 0.0;
        double ratio = J2 / pr;
        for (int j = 0; j < g.n; ++j) {
            double r = Kf.v[j] - ratio * psi_prime(f.v[j], p);
            nr2 += r * r;
            nKf2 += Kf.v[j] * Kf.v[j];
            fmax = std::max(fmax, f.v[j]);
        }
        res = std::sqrt(nr2 / nKf2);
        if (prev_J2 >= 0.0 && J2 < prev_J2) ++j_decreases;
        prev_J2 = J2;
        if (res <= cfg.tol) break;
        if (res > prev_res) {
            if (last_was_aa) {
                // Overshoot came from extrapolation, not the base map: no
                // theta damping, just regroup with fresh history.
                clear_hist();
                cooldown = 5;
            } else {
                theta = std::max(0.05, theta / 2.0);
                clear_hist();
            }
        }
        prev_res = res;
        last_was_aa = false;

        double lam = pr / J2;
        double dmin = 2.0 * al - lam;  // preconditioner denominator at xi = 0
        bool use_accel = accel_ok && it > cfg.warmup && dmin > 1e-8 * al &&
                         fmax < 0.9 * al;
        if (use_accel) {
            for (int j = 0; j < g.n; ++j) work.v[j] = f.v[j] * f.v[j];
            ws.forward(work.v, half);
            for (int k = 0; k <= g.n / 2; ++k)
                half[k] /= (2.0 * al - lam * sym.m[k]);
            ws.backward(half, work.v);
            ++accel_steps;
            clear_hist();
            if (res < 0.95 * best_res) {
                stale = 0;
            } else if (++stale > 60) {
                accel_ok = false;  // not helping; plain steps from here on
            }
            best_res = std::min(best_res, res);
            for (int j = 0; j < g.n; ++j) f.v[j] = std::max(work.v[j], 0.0);
            if (it % cfg.rearrange_every == 0) f = symmetric_rearrangement(f);
            double lamg = gauge_norm(f, p, 1.0);
            for (double& t : f.v) t /= lamg;
            continue;
        }
        best_res = std::min(best_res, res);

        // One application of the projected plain map.
        GridFunction xb(g);
        for (int j = 0; j < g.n; ++j) {
            double fr = psi_prime_inv(std::max(lam * Kf.v[j], 0.0), p);
            xb.v[j] = (1.0 - theta) * f.v[j] + theta * fr;
        }
        project(xb);
        ++plain_steps;
        std::vector<double> gk(g.n);
        for (int j = 0; j < g.n; ++j) gk[j] = xb.v[j] - f.v[j];

        GridFunction xnext = xb;
        if (cooldown > 0) {
            --cooldown;
            clear_hist();
        } else if (aa_allowed && !hist_x.empty()) {
            // Columns: displacement differences over the stored streak plus
            // the current pair; keep the most recent anderson_depth of them.
            int h = static_cast<int>(hist_x.size());
            int k = std::min(h, cfg.anderson_depth);
            std::vector<std::vector<double>> dx(k), dg(k);
            for (int c = 0; c < k; ++c) {
                int i = h - k + c;  // column c pairs entry i with entry i+1
                const std::vector<double>& x0 = hist_x[i];
                const std::vector<double>& g0 = hist_g[i];
                const std::vector<double>& x1 = (i + 1 < h) ? hist_x[i + 1] : f.v;
                const std::vector<double>& g1 = (i + 1 < h) ? hist_g[i + 1] : gk;
                dx[c].resize(g.n);
                dg[c].resize(g.n);
                for (int j = 0; j < g.n; ++j) {
                    dx[c][j] = x1[j] - x0[j];
                    dg[c][j] = g1[j] - g0[j];
                }
            }
            // Least squares min ||gk - DG c|| by regularized normal equations.
            std::vector<std::vector<double>> A(k, std::vector<double>(k));
            std::vector<double> b(k);
            double trace = 0.0;
            for (int i = 0; i < k; ++i) {
                for (int j = i; j < k; ++j) A[i][j] = A[j][i] = dot(dg[i], dg[j]);
                b[i] = dot(dg[i], gk);
                trace += A[i][i];
            }
            double reg = 1e-24 * trace / k + 1e-300;
            for (int i = 0; i < k; ++i) A[i][i] += reg;
            // Gaussian elimination with partial pivoting (k <= depth, tiny).
            std::vector<int> piv(k);
            bool singular = false;
            for (int col = 0; col < k && !singular; ++col) {
                int best = col;
                for (int r = col + 1; r < k; ++r)
                    if (std::abs(A[r][col]) > std::abs(A[best][col])) best = r;
                std::swap(A[col], A[best]);
                std::swap(b[col], b[best]);
                if (A[col][col] == 0.0) {
                    singular = true;
                    break;
                }
                for (int r = col + 1; r < k; ++r) {
                    double m2 = A[r][col] / A[col][col];
                    for (int c = col; c < k; ++c) A[r][c] -= m2 * A[col][c];
                    b[r] -= m2 * b[col];
                }
            }
            if (!singular) {
                std::vector<double> coef(k);
                for (int r = k - 1; r >= 0; --r) {
                    double s = b[r];
                    for (int c = r + 1; c < k; ++c) s -= A[r][c] * coef[c];
                    coef[r] = s / A[r][r];
                }
                std::vector<double> corr(g.n, 0.0);
                for (int c = 0; c < k; ++c)
                    for (int j = 0; j < g.n; ++j)
                        corr[j] += coef[c] * (dx[c][j] + dg[c][j]);
                double nc = std::sqrt(dot(corr, corr));
                double nx = l2_norm(xb) / std::sqrt(g.dx);  // plain vector norm
                if (std::isfinite(nc) && nc <= 10.0 * (nx + 1.0)) {
                    for (int j = 0; j < g.n; ++j) xnext.v[j] = xb.v[j] - corr[j];
                    project(xnext);
                    ++anderson_steps;
                    last_was_aa = true;
                }
            }
        }
        hist_x.push_back(f.v);
        hist_g.push_back(std::move(gk));
        if (static_cast<int>(hist_x.size()) > cfg.anderson_depth + 1) {
            hist_x.erase(hist_x.begin());
            hist_g.erase(hist_g.begin());
        }
        f = std::move(xnext);
    }

    // Final consistent evaluation at the returned profile; the loop's
    // counters ride along.  Convergence is judged afresh from the measured
    // residual, so the reported verdict and residual can never disagree.
    MaximizerResult state = evaluate_state(std::move(f), p, cfg.tol);
    state.iterations = std::min(it, cfg.max_iter);
    state.theta_final = theta;
    state.accel_steps = accel_steps;
    state.plain_steps = plain_steps;
    state.anderson_steps = anderson_steps;
    state.j_decreases = j_decreases;
    return state;
}

}  // namespace wavemax
