#pragma once
// Named invariant suites, one per module, runnable from the CLI.  Each check
// records the measured value against its bound so reports carry numbers, not
// just verdicts.  Randomized checks draw from a seeded generator (default
// seed 0) and are therefore reproducible run to run.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wavemax/grid.hpp"
#include "wavemax/kernel.hpp"
#include "wavemax/maximize.hpp"
#include "wavemax/orlicz.hpp"
#include "wavemax/rearrange.hpp"
#include "wavemax/sweep.hpp"
#include "wavemax/whitham.hpp"

namespace wavemax {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0;  // measured quantity (usually a defect or extremum)
    double bound = 0;  // the threshold it was compared against
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool passed() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

// Smooth nonnegative test profile: a few Gaussian bumps with seeded centers,
// widths, and amplitudes.
inline GridFunction random_bumps(const Grid& g, std::mt19937_64& rng,
                                 int bumps = 3) {
    std::uniform_real_distribution<double> uc(-g.L / 3.0, g.L / 3.0);
    std::uniform_real_distribution<double> uw(g.L / 64.0, g.L / 8.0);
    std::uniform_real_distribution<double> ua(0.2, 1.0);
    GridFunction f(g);
    for (int b = 0; b < bumps; ++b) {
        double c = uc(rng), w = uw(rng), A = ua(rng);
        for (int j = 0; j < g.n; ++j) {
            double t = (g.x[j] - c) / w;
            f.v[j] += A * std::exp(-t * t);
        }
    }
    return f;
}

// Rough nonnegative profile: uniform noise on a centered window.  Exercises
// the purely combinatorial operations (rearrangement, distribution function)
// far from the smooth regime.
inline GridFunction random_rough(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    GridFunction f(g);
    for (int j = 0; j < g.n; ++j)
        if (std::abs(g.x[j]) < g.L / 4.0) f.v[j] = u01(rng);
    return f;
}

inline void add_check(SuiteReport& rep, const std::string& name, double value,
                      double bound, bool pass) {
    rep.checks.push_back(CheckResult{name, pass, value, bound});
}

// value <= bound style check.
inline void check_le(SuiteReport& rep, const std::string& name, double value,
                     double bound) {
    add_check(rep, name, value, bound, value <= bound);
}

inline void check_true(SuiteReport& rep, const std::string& name, bool ok) {
    add_check(rep, name, ok ? 1.0 : 0.0, 1.0, ok);
}

// ||K||_{L^{3/2}} from the real-space table.  The singular cell [-dx/2,dx/2]
// is integrated with the substitution x = u^4, which removes the |x|^{-3/4}
// singularity of |K|^{3/2} exactly; the rest is midpoint over table cells.
inline double kernel_l32_norm(const KernelTable& t, const Grid& g) {
    double s = 0.0;
    for (int j = 0; j < g.n; ++j)
        if (j != t.singular_index)
            s += std::pow(std::abs(t.K[j]), 1.5) * g.dx;
    double R = t.Kreg[t.singular_index];
    double h = g.dx / 2.0, u1 = std::pow(h, 0.25), cell = 0.0;
    for (int q = 0; q < 16; ++q) {
        double u = 0.5 * u1 * (1.0 + kGL16x[q]);
        cell += kGL16w[q] * std::pow(t.c_a + R * u * u, 1.5);
    }
    cell *= 0.5 * u1 * 4.0;  // du weight times the Jacobian factor 4 u^3/u^3
    s += 2.0 * cell;         // both halves of the singular cell
    return std::pow(s, 2.0 / 3.0);
}

}  // namespace detail

inline SuiteReport verify_kernel(const Grid& g, std::uint64_t seed) {
    using namespace detail;
    SuiteReport rep{"kernel", {}};
    std::mt19937_64 rng(seed);

    // Transform plumbing.
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        GridFunction f(g);
        for (double& t : f.v) t = u(rng);
        auto F = dft(f);
        GridFunction back = idft(g, F);
        double num = 0, den = 0;
        for (int j = 0; j < g.n; ++j) {
            num += (back.v[j] - f.v[j]) * (back.v[j] - f.v[j]);
            den += f.v[j] * f.v[j];
        }
        check_le(rep, "dft/idft round-trip relative error",
                 std::sqrt(num / den), 1e-12);
        double freq = 0.0;
        for (const auto& c : F) freq += std::norm(c);
        freq /= 2.0 * g.L;
        double phys = inner_product(f, f);
        check_le(rep, "Parseval identity relative gap",
                 std::abs(freq - phys) / phys, 1e-10);
    }
    {
        GridFunction odd(g);
        for (int j = 0; j < g.n; ++j)
            odd.v[j] = g.x[j] * std::exp(-g.x[j] * g.x[j] / 16.0);
        check_le(rep, "odd-function quadrature magnitude",
                 std::abs(quadrature(odd)), 1e-12);
    }

    // Symbol shape.
    for (double a : {0.25, 0.5}) {
        SymbolTable t = make_symbol_table(g, a);
        double min_drop = std::numeric_limits<double>::infinity();
        for (int k = 0; k + 1 <= g.n / 2; ++k)
            min_drop = std::min(min_drop, t.m[k] - t.m[k + 1]);
        add_check(rep, "symbol strictly decreasing (a=" + std::to_string(a) + ")",
                  min_drop, 0.0, min_drop > 0.0);
        check_true(rep, "symbol range (0,1] with m(0)=1 (a=" + std::to_string(a) + ")",
                   t.m[0] == 1.0 && t.m[g.n / 2] > 0.0 && t.m[g.n / 2] < 1.0);
    }

    // Operator bounds on random smooth profiles.
    KernelTable tab = kernel_table(g, 0.5);
    double l32 = detail::kernel_l32_norm(tab, g);
    check_le(rep, "||K||_{L^{3/2}} below closed-form cap", l32, 1.396);
    {
        double worst_inf = 0, worst_l2 = 0, worst_young = 0, worst_qf = 0;
        for (int c = 0; c < 5; ++c) {
            GridFunction f = random_bumps(g, rng);
            GridFunction Kf = convolve(f, 0.5);
            worst_inf = std::max(worst_inf, sup_norm(Kf) / sup_norm(f));
            worst_l2 = std::max(worst_l2, l2_norm(Kf) / l2_norm(f));
            worst_young =
                std::max(worst_young, sup_norm(Kf) / (l32 * l3_norm(f)));
            double qf = quad_form(f);
            worst_qf = std::max(
                worst_qf, std::abs(qf - inner_product(f, Kf)) / qf);
        }
        check_le(rep, "sup-norm contraction ||K*f||/||f||", worst_inf, 1.0);
        check_le(rep, "L2 contraction ||K*f||/||f||", worst_l2, 1.0);
        check_le(rep, "Young bound ||K*f||_inf/(||K||_{3/2}||f||_3)",
                 worst_young, 1.0);
        check_le(rep, "quad_form vs <f,K*f> relative gap", worst_qf, 1e-10);
    }

    // Bell-shape preservation under convolution.  Rearranged multi-bump
    // inputs have derivative kinks where level sets merge, so the spectral
    // convolution carries alternating-sign ripples of order 1e-10 * peak in
    // the far tail, and magnitude sorting reorders exactly those ripples.
    // Compare against a floor that still certifies the shape at every
    // physically meaningful amplitude; the peak location is held exactly.
    {
        double worst_rel = 0.0;
        bool peak_centred = true;
        for (int c = 0; c < 50; ++c) {
            GridFunction f = symmetric_rearrangement(random_bumps(g, rng));
            GridFunction Kf = convolve(f, 0.5);
            GridFunction Kfs = symmetric_rearrangement(Kf);
            double scale = sup_norm(Kf);
            for (int j = 0; j < g.n; ++j)
                worst_rel = std::max(
                    worst_rel, std::abs(Kf.v[j] - Kfs.v[j]) / scale);
            int arg = static_cast<int>(
                std::max_element(Kf.v.begin(), Kf.v.end()) - Kf.v.begin());
            if (arg != g.n / 2) peak_centred = false;
        }
        check_le(rep, "convolution vs its rearrangement, relative gap",
                 worst_rel, 1e-8);
        check_true(rep, "convolution keeps the peak at the origin",
                   peak_centred);
    }

    // Real-space table: positivity, convexity, unit mass, Slobodeckij.
    {
        // The table is computed with absolute accuracy near 1e-15; beyond
        // |x| ~ 17 the kernel itself sinks under that floor and the computed
        // values may round to tiny negatives.  Assert strict positivity where
        // the kernel is resolvable and cap the negative part beyond.
        double min_pos = std::numeric_limits<double>::infinity();
        double far_neg = 0.0;
        for (int j = 0; j < g.n; ++j) {
            if (j == tab.singular_index) continue;
            if (std::abs(g.x[j]) <= 12.0)
                min_pos = std::min(min_pos, tab.K[j]);
            else
                far_neg = std::max(far_neg, -tab.K[j]);
        }
        add_check(rep, "kernel positive where resolvable (|x| <= 12)", min_pos,
                  0.0, min_pos > 0.0);
        check_le(rep, "kernel negative part beyond |x| = 12",
                 std::max(far_neg, 0.0), 1e-13);
        double maxK = 0.0;
        for (int j = 0; j < g.n; ++j)
            if (j != tab.singular_index) maxK = std::max(maxK, tab.K[j]);
        double worst_d2 = 0.0;
        for (int j = 1; j + 1 < g.n; ++j) {
            if (std::abs(j - tab.singular_index) <= 2) continue;
            double d2 = tab.K[j - 1] - 2.0 * tab.K[j] + tab.K[j + 1];
            worst_d2 = std::min(worst_d2, d2);
        }
        check_le(rep, "kernel convexity defect away from singularity",
                 -worst_d2, 1e-10 * maxK);
        check_le(rep, "kernel mass defect |mass - 1|",
                 std::abs(kernel_mass(tab, g) - 1.0), 1e-6);
        GridFunction gau(g);
        for (int j = 0; j < g.n; ++j)
            gau.v[j] = std::exp(-g.x[j] * g.x[j]);
        SlobodeckijGap sg = slobodeckij_gap(gau, tab);
        check_le(rep, "Slobodeckij identity relative gap (Gaussian)",
                 std::abs(sg.lhs - sg.rhs) / std::abs(sg.rhs), 1e-3);
    }
    return rep;
}

inline SuiteReport verify_orlicz(const Grid& g, std::uint64_t seed) {
    using namespace detail;
    SuiteReport rep{"orlicz", {}};
    std::mt19937_64 rng(seed);

    for (double al : {0.1, 1.0, 2.385, 10.0, 100.0}) {
        OrliczParams p = make_orlicz(al);
        // The implementation switches branch at y = alpha; compare the two
        // branches across the switch point itself.
        double below = std::nextafter(al, 0.0);
        double tol = 1e-12 * al * al;
        check_le(rep, "psi branch continuity at y=alpha (alpha=" +
                          std::to_string(al) + ")",
                 std::abs(psi(below, p) - psi(al, p)), tol);
        check_le(rep, "psi' branch continuity at y=alpha (alpha=" +
                          std::to_string(al) + ")",
                 std::abs(psi_prime(below, p) - psi_prime(al, p)), tol);
        // Inverse exactness over the full range of psi'.
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double gv = 10.0 * al * al * i / 200.0;
            double e = std::abs(psi_prime(psi_prime_inv(gv, p), p) - gv);
            worst = std::max(worst, e / std::max(1.0, gv));
        }
        check_le(rep, "psi'^{-1} inverse defect (alpha=" + std::to_string(al) + ")",
                 worst, 1e-12);
        // Delta_2: psi(2y) <= C psi(y) with one uniform constant.  The ratio
        // is invariant under rescaling alpha; it tends to the cubic factor 8
        // for y >> alpha but peaks near 12.41 at y ~ 2.63 alpha, where the
        // shifted-cubic branch takes over.  12.5 is an honest uniform cap.
        double worst_d2 = 0.0;
        for (int i = 1; i <= 200; ++i) {
            double y = 4.0 * al * i / 200.0;
            worst_d2 = std::max(worst_d2, psi(2.0 * y, p) / psi(y, p));
        }
        check_le(rep, "Delta_2 ratio psi(2y)/psi(y) (alpha=" + std::to_string(al) + ")",
                 worst_d2, 12.5);
        // Height constant: 2 psi(B) = B psi'(B) and B/alpha fixed.
        check_le(rep, "2psi(B)-Bpsi'(B) defect (alpha=" + std::to_string(al) + ")",
                 std::abs(2.0 * psi(p.B, p) - p.B * psi_prime(p.B, p)),
                 1e-10 * al * al * al);
        check_le(rep, "B/alpha vs height-equation root (alpha=" + std::to_string(al) + ")",
                 std::abs(p.B / al - orlicz_height_ratio()), 1e-12);
    }

    // Norm equivalence brackets at gauge 1 (constants derived from
    // 0.574 alpha y^2 <= psi(y) and psi(y) >= y^3/6, psi(y) <= alpha y^2 + y^3).
    {
        double worst_l2 = 0.0, worst_l3 = 0.0, worst_low = 2.0;
        std::uniform_real_distribution<double> ual(0.3, 30.0);
        for (int c = 0; c < 100; ++c) {
            double al = ual(rng);
            OrliczParams p = make_orlicz(al);
            GridFunction f = random_bumps(g, rng);
            double lam = gauge_norm(f, p);
            for (double& t : f.v) t /= lam;
            worst_l2 = std::max(worst_l2, std::sqrt(al) * l2_norm(f));
            worst_l3 = std::max(worst_l3, l3_norm(f));
            double low = al * l2_norm(f) * l2_norm(f) +
                         std::pow(l3_norm(f), 3.0);
            worst_low = std::min(worst_low, low);
        }
        check_le(rep, "sqrt(alpha)||f||_2 at gauge 1, upper bracket", worst_l2,
                 1.33);
        check_le(rep, "||f||_3 at gauge 1, upper bracket", worst_l3, 1.82);
        add_check(rep, "alpha||f||_2^2+||f||_3^3 at gauge 1, lower bracket",
                  worst_low, 0.999, worst_low >= 0.999);
    }

    // Gauge-norm behavior and pairing forms.
    {
        OrliczParams p = make_orlicz(2.0);
        double worst_hom = 0.0, worst_unit = 0.0, worst_pair = 0.0;
        std::uniform_real_distribution<double> uc(0.1, 10.0);
        for (int c = 0; c < 20; ++c) {
            GridFunction f = random_bumps(g, rng);
            double s = uc(rng);
            double n1 = gauge_norm(f, p);
            GridFunction fs(g);
            for (int j = 0; j < g.n; ++j) fs.v[j] = s * f.v[j];
            worst_hom = std::max(worst_hom,
                                 std::abs(gauge_norm(fs, p) - s * n1) / (s * n1));
            GridFunction fn(g);
            for (int j = 0; j < g.n; ++j) fn.v[j] = f.v[j] / n1;
            double unit = 0.0;
            for (double t : fn.v) unit += psi(std::abs(t), p);
            unit *= g.dx;
            worst_unit = std::max(worst_unit, std::abs(unit - 1.0));
            worst_pair = std::max(
                worst_pair, std::abs(pairing(fn, p) - pairing_closed_form(fn, p)) /
                                pairing(fn, p));
        }
        check_le(rep, "gauge norm positive homogeneity", worst_hom, 1e-12);
        check_le(rep, "int psi(f/gauge_norm) = 1 defect", worst_unit, 1e-12);
        check_le(rep, "pairing vs closed form relative gap", worst_pair, 1e-12);
    }

    // Gateaux derivative against central finite differences.
    {
        OrliczParams p = make_orlicz(3.0);
        double worst = 0.0;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int c = 0; c < 20; ++c) {
            GridFunction f0 = random_bumps(g, rng);
            double lam = gauge_norm(f0, p);
            for (double& t : f0.v) t /= lam;
            GridFunction h = random_bumps(g, rng);
            for (double& t : h.v) t *= u(rng);
            double an = gateaux_derivative(f0, h, p);
            const double eps = 1e-5;
            GridFunction fp(g), fm(g);
            for (int j = 0; j < g.n; ++j) {
                fp.v[j] = f0.v[j] + eps * h.v[j];
                fm.v[j] = f0.v[j] - eps * h.v[j];
            }
            double fd = (gauge_norm(fp, p) - gauge_norm(fm, p)) / (2.0 * eps);
            worst = std::max(worst, std::abs(an - fd));
        }
        check_le(rep, "Gateaux derivative vs finite differences", worst, 1e-5);
    }
    return rep;
}

inline SuiteReport verify_rearrange(const Grid& g, std::uint64_t seed) {
    using namespace detail;
    SuiteReport rep{"rearrange", {}};
    std::mt19937_64 rng(seed);
    OrliczParams p = make_orlicz(1.5);

    double worst_gauge = 0.0, worst_l2 = 0.0, worst_l3 = 0.0;
    double worst_riesz = -std::numeric_limits<double>::infinity();
    bool idem = true, bell = true, equid = true;
    for (int c = 0; c < 100; ++c) {
        GridFunction f = (c % 2 == 0) ? random_bumps(g, rng)
                                      : random_rough(g, rng);
        GridFunction fs = symmetric_rearrangement(f);
        worst_gauge = std::max(
            worst_gauge,
            std::abs(gauge_norm(fs, p) - gauge_norm(f, p)) / gauge_norm(f, p));
        worst_l2 = std::max(worst_l2,
                            std::abs(l2_norm(fs) - l2_norm(f)) / l2_norm(f));
        worst_l3 = std::max(worst_l3,
                            std::abs(l3_norm(fs) - l3_norm(f)) / l3_norm(f));
        worst_riesz = std::max(worst_riesz, quad_form(f) - quad_form(fs));
        GridFunction fss = symmetric_rearrangement(fs);
        for (int j = 0; j < g.n; ++j)
            if (fss.v[j] != fs.v[j]) idem = false;
        if (!is_bell_shaped(fs)) bell = false;
        std::vector<double> a(f.v), b(fs.v);
        for (double& t : a) t = std::abs(t);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) equid = false;
    }
    check_le(rep, "gauge-norm invariance under rearrangement", worst_gauge,
             1e-12);
    check_le(rep, "L2 invariance under rearrangement", worst_l2, 1e-12);
    check_le(rep, "L3 invariance under rearrangement", worst_l3, 1e-12);
    check_le(rep, "Riesz defect quad_form(f)-quad_form(f#)", worst_riesz,
             1e-10);
    check_true(rep, "rearrangement idempotent (exact)", idem);
    check_true(rep, "rearranged profile bell-shaped", bell);
    check_true(rep, "rearrangement equidistributed with |f|", equid);

    // Support preservation: profile supported in [-L/4, L/4] stays there.
    {
        bool ok = true;
        for (int c = 0; c < 10 && ok; ++c) {
            GridFunction f = random_rough(g, rng);  // supported in |x| < L/4
            GridFunction fs = symmetric_rearrangement(f);
            for (int j = 0; j < g.n; ++j)
                if (fs.v[j] != 0.0 && std::abs(g.x[j]) > g.L / 4.0) ok = false;
        }
        check_true(rep, "support radius preserved", ok);
    }

    // Distribution function: monotone, right-sized at s=0, layer cake.
    {
        GridFunction f = random_bumps(g, rng);
        double smax = sup_norm(f);
        bool mono = true;
        double prev = dist_fn(f, 0.0);
        int nz = 0;
        for (double t : f.v)
            if (t != 0.0) ++nz;
        bool size0 = std::abs(prev - g.dx * nz) == 0.0;
        for (int i = 1; i <= 200; ++i) {
            double cur = dist_fn(f, smax * i / 200.0);
            if (cur > prev) mono = false;
            prev = cur;
        }
        check_true(rep, "distribution function nonincreasing", mono);
        check_true(rep, "dist_fn(f,0) counts the support", size0);

        double worst_cake = 0.0;
        for (int c = 0; c < 3; ++c) {
            GridFunction fc = (c == 2) ? random_rough(g, rng)
                                       : random_bumps(g, rng);
            double lhs = 0.0;
            for (double t : fc.v) lhs += psi(std::abs(t), p);
            lhs *= g.dx;
            double sm = sup_norm(fc);
            const int msteps = 20000;
            double ds = sm / msteps, rhs = 0.0;
            for (int i = 0; i < msteps; ++i) {
                double s = (i + 0.5) * ds;
                rhs += psi_prime(s, p) * dist_fn(fc, s);
            }
            rhs *= ds;
            worst_cake = std::max(worst_cake, std::abs(lhs - rhs) / lhs);
        }
        check_le(rep, "layer-cake identity relative gap", worst_cake, 1e-3);
    }
    return rep;
}

inline SuiteReport verify_maximize(const Grid& g, std::uint64_t seed) {
    using namespace detail;
    SuiteReport rep{"maximize", {}};
    std::mt19937_64 rng(seed);
    const double al = 3.0;
    OrliczParams p = make_orlicz(al);
    SolverConfig cfg;
    GridFunction f0 = initial_guess(p, g);
    MaximizerResult r = solve_max(p, g, cfg);

    check_true(rep, "solver converged at alpha=3", r.converged);
    check_le(rep, "EL residual", r.residual, cfg.tol);
    check_le(rep, "gauge norm of accepted iterate, |N-1|",
             std::abs(gauge_norm(r.f, p) - 1.0), 1e-10);
    check_true(rep, "accepted iterate bell-shaped (exact)",
               is_bell_shaped(r.f));
    check_le(rep, "height bound f(0)/(1.4844 alpha)",
             r.f.v[g.n / 2] / (orlicz_height_ratio() * al), 1.0 + 1e-3);
    check_true(rep, "pairing in (1,2)",
               r.pairing > 1.0 && r.pairing < 2.0);
    check_true(rep, "alpha J^2 in (1, 3/2)",
               r.alphaJ2 > 1.0 && r.alphaJ2 < 1.5);
    add_check(rep, "L3 non-degeneracy ||f||_3^3", std::pow(l3_norm(r.f), 3.0),
              0.0, l3_norm(r.f) > 0.0);
    check_le(rep, "decay f(L-dx)/f(0)", r.decay_ratio, 1e-6);

    // Maximality against the initial guess and random bell competitors.
    {
        double J2 = r.J * r.J;
        bool ok = quad_form(f0) <= J2;
        std::uniform_real_distribution<double> ue(0.0, 0.3);
        for (int c = 0; c < 20 && ok; ++c) {
            GridFunction pert = random_bumps(g, rng, 2);
            double e = ue(rng);
            GridFunction q(g);
            for (int j = 0; j < g.n; ++j)
                q.v[j] = r.f.v[j] + e * pert.v[j];
            q = symmetric_rearrangement(q);
            double lam = gauge_norm(q, p);
            for (double& t : q.v) t /= lam;
            // Slack covers round-off when a tiny perturbation lands the
            // competitor back on the maximizer itself.
            if (quad_form(q) > J2 * (1.0 + 1e-12)) ok = false;
        }
        check_true(rep, "J^2 maximal vs guess and 20 bell competitors", ok);
    }
    return rep;
}

inline SuiteReport verify_sweep(const Grid& g, std::uint64_t /*seed*/) {
    using namespace detail;
    SuiteReport rep{"sweep", {}};
    std::vector<double> alphas{3.0, 10.0, 50.0};
    std::vector<SweepRow> rows = alpha_sweep(alphas, g);
    bool conv = true, sorted = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].converged) conv = false;
        if (i > 0 && rows[i].alpha <= rows[i - 1].alpha) sorted = false;
    }
    check_true(rep, "all sweep rows converged", conv);
    check_true(rep, "rows sorted by alpha", sorted);
    double worst_drop = std::numeric_limits<double>::infinity();
    double worst_mu = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        worst_drop = std::min(worst_drop,
                              rows[i].alphaJ2 - rows[i + 1].alphaJ2);
        worst_mu = std::min(worst_mu, rows[i].mu - rows[i + 1].mu);
    }
    add_check(rep, "alpha J^2 strictly decreasing (min drop)", worst_drop, 0.0,
              worst_drop > 0.0);
    add_check(rep, "mu strictly decreasing toward 1 (min drop)", worst_mu, 0.0,
              worst_mu > 0.0);
    double cap = 3.0 * std::pow(orlicz_height_ratio(), 2.0) /
                 (2.0 + 3.0 * (orlicz_height_ratio() - 1.0) +
                  3.0 * std::pow(orlicz_height_ratio() - 1.0, 3.0));
    double worst_aj2 = 0.0;
    for (const SweepRow& row : rows) worst_aj2 = std::max(worst_aj2, row.alphaJ2);
    check_le(rep, "alpha J^2 below closed-form cap", worst_aj2, cap);
    check_true(rep, "alpha J^2 at alpha=50 in (1, 1.05)",
               rows.back().alphaJ2 > 1.0 && rows.back().alphaJ2 < 1.05);

    // Warm-vs-cold consistency and branch injectivity need the profiles.
    MaximizerResult r3 = solve_max(make_orlicz(3.0), g);
    MaximizerResult r10 = solve_max(make_orlicz(10.0), g);
    for (const SweepRow& row : rows)
        if (row.alpha == 10.0)
            check_le(rep, "warm vs cold alpha J^2 gap at alpha=10",
                     std::abs(row.alphaJ2 - r10.alphaJ2), 1e-8);
    GridFunction diff(g);
    for (int j = 0; j < g.n; ++j) diff.v[j] = r3.f.v[j] - r10.f.v[j];
    add_check(rep, "profiles at distinct alpha differ in L2", l2_norm(diff),
              1e-8, l2_norm(diff) > 1e-8);
    return rep;
}

inline SuiteReport verify_whitham(const Grid& g, std::uint64_t /*seed*/) {
    using namespace detail;
    SuiteReport rep{"whitham", {}};
    const double al = 5.0;
    MaximizerResult r = solve_max(make_orlicz(al), g);
    SolitaryWave w = to_wave(r, make_orlicz(al));

    check_le(rep, "steady-equation residual (sup)", w.diagnostics.steady_residual,
             1e-8);
    check_le(rep, "lower-branch identity residual",
             w.diagnostics.branch_residual, 1e-7);
    check_le(rep, "mass identity gap", w.diagnostics.mass_identity_gap, 1e-6);
    check_true(rep, "wave speed mu in (1,2)", w.mu > 1.0 && w.mu < 2.0);
    double minphi = std::numeric_limits<double>::infinity();
    double maxphi = 0.0;
    for (double t : w.phi.v) {
        minphi = std::min(minphi, t);
        maxphi = std::max(maxphi, t);
    }
    check_true(rep, "0 < phi <= mu/2",
               minphi > 0.0 && maxphi <= w.mu / 2.0 + 1e-10);
    add_check(rep, "sup phi >= mu - 1 (margin)",
              w.diagnostics.sup_phi - (w.mu - 1.0), -1e-8,
              w.diagnostics.sup_phi >= w.mu - 1.0 - 1e-8);
    add_check(rep, "||phi||_2 above 0.5 alpha^{-3/2}", l2_norm(w.phi),
              0.5 * std::pow(al, -1.5),
              l2_norm(w.phi) > 0.5 * std::pow(al, -1.5));
    check_true(rep, "scaling ratio alpha sup phi / sup f in [1/2, 1]",
               w.diagnostics.scaling_ratio >= 0.5 &&
                   w.diagnostics.scaling_ratio <= 1.0);
    check_true(rep, "phi bell-shaped", is_bell_shaped(w.phi));

    // Sensitivity: the identities must detect non-solutions.
    {
        SolitaryWave bad = w;
        for (int j = 0; j < g.n; ++j)
            bad.phi.v[j] += 1e-3 * std::exp(-g.x[j] * g.x[j]);
        add_check(rep, "steady residual detects 1e-3 perturbation",
                  steady_residual(bad), 1e-4, steady_residual(bad) > 1e-4);
        SolitaryWave twice = w;
        for (double& t : twice.phi.v) t *= 2.0;
        double gap = mass_identity(twice);
        add_check(rep, "mass identity detects scaled profile", gap, 0.1,
                  gap > 0.1);
    }
    return rep;
}

inline const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{
        "kernel", "orlicz", "rearrange", "maximize", "sweep", "whitham"};
    return names;
}

inline SuiteReport verify_suite(const std::string& name, const Grid& g,
                                std::uint64_t seed) {
    if (name == "kernel") return verify_kernel(g, seed);
    if (name == "orlicz") return verify_orlicz(g, seed);
    if (name == "rearrange") return verify_rearrange(g, seed);
    if (name == "maximize") return verify_maximize(g, seed);
    if (name == "sweep") return verify_sweep(g, seed);
    if (name == "whitham") return verify_whitham(g, seed);
    throw std::invalid_argument("verify_suite: unknown suite '" + name + "'");
}

inline std::vector<SuiteReport> run_verify(const std::string& name,
                                           const Grid& g, std::uint64_t seed) {
    std::vector<SuiteReport> out;
    if (name == "all") {
        for (const std::string& s : verify_suite_names())
            out.push_back(verify_suite(s, g, seed));
    } else {
        out.push_back(verify_suite(name, g, seed));
    }
    return out;
}

}  // namespace wavemax
