// Constrained maximization: the initial bump, the damped fixed-point step,
// the full solver with its acceleration layers, and the state evaluator the
// CLI uses for stored profiles.  The alpha = 3 run is a frozen regression:
// alpha J^2 is pinned to the value produced at first validation (which also
// matched an independent high-precision prototype to all printed digits).

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>

#include "wavemax/grid.hpp"
#include "wavemax/maximize.hpp"
#include "wavemax/orlicz.hpp"
#include "wavemax/rearrange.hpp"

using namespace wavemax;

TEST_CASE("solver configuration validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    SolverConfig bad = cfg;
    bad.tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.max_iter = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.theta = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.rearrange_every = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = cfg;
    bad.anderson_depth = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("initial guess is admissible") {
    Grid g = make_grid(6, 4096);
    for (double al : {0.8, 3.0, 20.0}) {
        OrliczParams p = make_orlicz(al);
        GridFunction f = initial_guess(p, g);
        CHECK(std::abs(gauge_norm(f, p) - 1.0) < 1e-10);
        CHECK(is_bell_shaped(f));
        for (double t : f.v) CHECK(t >= 0.0);
    }
    // A bump too wide for the box (tiny alpha) is rejected with advice.
    CHECK_THROWS_AS(initial_guess(make_orlicz(0.01), g), std::invalid_argument);
    // And one unresolvable on a coarse grid likewise.
    Grid tiny = make_grid(0, 16);
    CHECK_THROWS_AS(initial_guess(make_orlicz(10.0), tiny),
                    std::invalid_argument);
}

TEST_CASE("plain fixed-point step preserves the constraint set") {
    Grid g = make_grid(6, 4096);
    OrliczParams p = make_orlicz(3.0);
    GridFunction f = initial_guess(p, g);
    double r0 = el_residual(f, p);
    for (int s = 0; s < 5; ++s) {
        f = el_step(f, p, 1.0);
        CHECK(std::abs(gauge_norm(f, p) - 1.0) < 1e-10);
        CHECK(is_bell_shaped(f));
    }
    CHECK(el_residual(f, p) < r0);  // contraction from the bump at alpha = 3

    GridFunction off = f;
    for (double& t : off.v) t *= 2.0;
    CHECK_THROWS_AS(el_step(off, p, 1.0), std::invalid_argument);
}

TEST_CASE("solver regression at alpha = 3") {
    Grid g = make_grid(6, 4096);
    OrliczParams p = make_orlicz(3.0);
    SolverConfig cfg;
    MaximizerResult r = solve_max(p, g, cfg);

    CHECK(r.converged);
    CHECK(r.residual <= cfg.tol);
    CHECK(r.iterations <= 100);  // measured 49 with acceleration on
    CHECK(r.alphaJ2 == Catch::Approx(1.01523880).epsilon(1e-7));
    CHECK(r.alphaJ2 > 1.0);
    CHECK(r.pairing > 1.0);
    CHECK(r.pairing < 2.0);
    CHECK(r.mu > 1.0);
    CHECK(r.mu < 2.0);
    CHECK(r.peak_ratio < 1.0);
    CHECK(r.resolved);
    // The advisory fires iff the profile is still above 1e-8 of its peak at
    // |x| = L/2.  On this l = 6 grid the alpha = 3 wave decays to ~1e-10 by
    // the boundary (hence resolved) but is only down to ~1e-5 at L/2, so a
    // converged result may legitimately carry the domain-size note.
    CHECK(r.advice.empty() == (r.truncation_ratio <= 1e-8));
    if (!r.advice.empty()) CHECK(r.advice.find("domain") != std::string::npos);
    CHECK(std::abs(gauge_norm(r.f, p) - 1.0) < 1e-10);
    CHECK(is_bell_shaped(r.f));

    SECTION("state evaluator reproduces the solver's own report") {
        MaximizerResult ev = evaluate_state(r.f, p, cfg.tol);
        CHECK(ev.converged);
        CHECK(ev.J == r.J);
        CHECK(ev.pairing == r.pairing);
        CHECK(ev.residual == r.residual);
        CHECK(ev.alphaJ2 == r.alphaJ2);
        CHECK(ev.mu == r.mu);
        CHECK(ev.peak_ratio == r.peak_ratio);
    }

    SECTION("warm restart from the fixed point returns immediately") {
        MaximizerResult w = solve_max(p, g, cfg, r.f);
        CHECK(w.converged);
        CHECK(w.iterations <= 2);
        CHECK(w.J == Catch::Approx(r.J).epsilon(1e-12));
    }

    SECTION("warm start validation") {
        Grid h = make_grid(6, 2048);
        GridFunction wrong(h);
        for (double& t : wrong.v) t = 0.1;
        CHECK_THROWS_AS(solve_max(p, g, cfg, wrong), std::invalid_argument);

        GridFunction neg = r.f;
        neg.v[10] = -neg.v[10] - 1.0;
        CHECK_THROWS_AS(solve_max(p, g, cfg, neg), std::invalid_argument);

        GridFunction off = r.f;
        for (double& t : off.v) t *= 3.0;
        CHECK_THROWS_AS(solve_max(p, g, cfg, off), std::invalid_argument);
    }
}

TEST_CASE("iteration cap reports honest non-convergence") {
    Grid g = make_grid(6, 4096);
    OrliczParams p = make_orlicz(3.0);
    SolverConfig cfg;
    cfg.max_iter = 3;
    MaximizerResult r = solve_max(p, g, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
    CHECK(r.residual > cfg.tol);
    CHECK_FALSE(r.advice.empty());
    CHECK(std::isfinite(r.alphaJ2));
}

TEST_CASE("acceleration layers only change the speed, not the answer") {
    Grid g = make_grid(6, 4096);
    OrliczParams p = make_orlicz(3.0);
    SolverConfig fast;  // defaults: preconditioned + Anderson
    SolverConfig slow;
    slow.accelerate = false;
    slow.anderson_depth = 0;
    slow.max_iter = 50000;  // the undamped plain map converges slowly
    MaximizerResult a = solve_max(p, g, fast);
    MaximizerResult b = solve_max(p, g, slow);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(a.alphaJ2 == Catch::Approx(b.alphaJ2).epsilon(1e-9));
    CHECK(a.anderson_steps > 0);
    CHECK(b.anderson_steps == 0);
    CHECK(b.accel_steps == 0);
}
