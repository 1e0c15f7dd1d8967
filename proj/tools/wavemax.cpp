// wavemax: command-line driver for the bell-shaped solitary-wave toolkit.
//
// Subcommands
//   solve      constrained maximizer at one alpha; JSON summary + profile CSV
//   sweep      continuation across an alpha range; branch CSV + JSON
//   threshold  bisection bracket for the smallest alpha with a solution
//   wave       solitary-wave transform (solve first, or load a profile)
//   kernel     real-space kernel table as CSV (columns x, K_half, K_quarter)
//   verify     seeded property suites with per-check numbers
//
// Exit codes: 0 success; 1 verify-suite check failure; 2 validation error
// (bad flags, bad parameters, unreadable files); 3 solver non-convergence.
//
// The JSON summary always goes to stdout.  Files are written only when an
// output directory is known: --out wins, else the WAVEMAX_OUT_DIR
// environment variable.  --format json|csv|both picks which files appear.
// Outputs carry no timestamps and all randomness is seeded, so identical
// invocations produce byte-identical bytes.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wavemax/io.hpp"

namespace fs = std::filesystem;
using namespace wavemax;

namespace {

struct GridArgs {
    int l = 6;
    int n = 4096;
};

struct OutputArgs {
    std::string dir;            // empty: stdout only
    std::string format = "both";
    CLI::Option* format_opt = nullptr;

    bool want_json() const { return format != "csv"; }
    bool want_csv() const { return format != "json"; }

    void validate() const {
        if (format_opt && format_opt->count() > 0 && dir.empty())
            throw std::invalid_argument(
                "--format selects files to write, but no output directory is "
                "set; pass --out or set WAVEMAX_OUT_DIR");
    }
};

void add_grid_options(CLI::App* sub, GridArgs& g) {
    sub->add_option("--l", g.l, "domain exponent, half-length L = 2^l")
        ->capture_default_str();
    sub->add_option("--n", g.n, "grid nodes (power of two)")
        ->capture_default_str();
}

void add_output_options(CLI::App* sub, OutputArgs& o) {
    sub->add_option("--out", o.dir,
                    "output directory for result files "
                    "(default: $WAVEMAX_OUT_DIR, or stdout only)")
        ->envname("WAVEMAX_OUT_DIR");
    o.format_opt =
        sub->add_option("--format", o.format, "which files to write")
            ->check(CLI::IsMember({"json", "csv", "both"}))
            ->capture_default_str();
}

// Print the summary and drop the requested files next to each other.
void emit(const OutputArgs& o, const std::string& stem, const ordered_json& j,
          const CsvTable* csv) {
    const std::string js = json_to_string(j);
    std::fputs(js.c_str(), stdout);
    if (o.dir.empty()) return;
    fs::create_directories(o.dir);
    if (o.want_json()) write_text_file(fs::path(o.dir) / (stem + ".json"), js);
    if (o.want_csv() && csv)
        write_text_file(fs::path(o.dir) / (stem + ".csv"), csv_to_string(*csv));
}

GridFunction load_gauge_normalized(const std::string& path, const Grid& g,
                                   const OrliczParams& p) {
    GridFunction f = read_profile_csv(path, g);
    for (double t : f.v)
        if (t < 0.0)
            throw std::invalid_argument(
                "profile in " + path + " has negative entries");
    double lam = gauge_norm(f, p);  // throws on the zero profile
    for (double& t : f.v) t /= lam;
    return f;
}

int run_solve(double alpha, const GridArgs& ga, const SolverConfig& cfg,
              const std::string& warm_path, const OutputArgs& out) {
    Grid g = make_grid(ga.l, ga.n);
    OrliczParams p = make_orlicz(alpha);
    std::optional<GridFunction> warm;
    if (!warm_path.empty()) warm = load_gauge_normalized(warm_path, g, p);
    MaximizerResult r = solve_max(p, g, cfg, warm);
    CsvTable profile = profile_csv(r.f, "f");
    emit(out, "solve", solve_summary(r, alpha, g, cfg), &profile);
    if (!r.converged) {
        std::fprintf(stderr, "solve: not converged after %d iterations "
                             "(residual %.3e, target %.3e)\n",
                     r.iterations, r.residual, cfg.tol);
        return 3;
    }
    return 0;
}

int run_sweep(double amin, double amax, int steps, bool linear, bool cold,
              const GridArgs& ga, const SolverConfig& cfg,
              const OutputArgs& out) {
    if (steps < 2)
        throw std::invalid_argument("sweep: --steps must be >= 2");
    if (!(amin > 0.0 && amax > amin))
        throw std::invalid_argument(
            "sweep: need 0 < --alpha-min < --alpha-max");
    Grid g = make_grid(ga.l, ga.n);
    std::vector<double> alphas(steps);
    for (int i = 0; i < steps; ++i) {
        double t = static_cast<double>(i) / (steps - 1);
        alphas[i] = linear ? amin + t * (amax - amin)
                           : std::exp(std::log(amin) +
                                      t * (std::log(amax) - std::log(amin)));
    }
    alphas.front() = amin;  // pin the endpoints against exp/log round-off
    alphas.back() = amax;
    std::vector<SweepRow> rows = alpha_sweep(alphas, g, cfg, cold);
    CsvTable table = sweep_csv(rows);
    emit(out, "sweep", sweep_summary(rows, g, cold), &table);
    for (const SweepRow& r : rows)
        if (!r.converged) {
            std::fprintf(stderr, "sweep: alpha = %g did not converge%s%s\n",
                         r.alpha, r.note.empty() ? "" : ": ",
                         r.note.c_str());
            return 3;
        }
    return 0;
}

int run_threshold(double lo, double hi, double tol, const GridArgs& ga,
                  const OutputArgs& out) {
    Grid g = make_grid(ga.l, ga.n);
    ThresholdEstimate est = estimate_alpha0(lo, hi, tol, g);
    CsvTable table;
    table.header = {"lo", "hi", "width", "tol"};
    table.columns = {{est.lo}, {est.hi}, {est.hi - est.lo}, {tol}};
    emit(out, "threshold", threshold_summary(est, tol, g), &table);
    return 0;
}

int run_wave(double alpha, const std::string& from_path, const GridArgs& ga,
             const SolverConfig& cfg, const OutputArgs& out) {
    Grid g = make_grid(ga.l, ga.n);
    OrliczParams p = make_orlicz(alpha);
    MaximizerResult r;
    if (from_path.empty()) {
        r = solve_max(p, g, cfg);
    } else {
        r = evaluate_state(load_gauge_normalized(from_path, g, p), p, cfg.tol);
    }
    if (!r.converged) {
        // Print the maximizer-level summary so the numbers are on record,
        // then report the failure.
        std::fputs(json_to_string(solve_summary(r, alpha, g, cfg)).c_str(),
                   stdout);
        std::fprintf(stderr,
                     "wave: %s does not satisfy the Euler-Lagrange equation "
                     "to tol %.3e (residual %.3e)\n",
                     from_path.empty() ? "the solve" : from_path.c_str(),
                     cfg.tol, r.residual);
        return 3;
    }
    SolitaryWave w = to_wave(r, p);
    CsvTable profile = profile_csv(w.phi, "phi");
    emit(out, "wave", wave_summary(w, r, g), &profile);
    return 0;
}

int run_kernel(const GridArgs& ga, const OutputArgs& out) {
    Grid g = make_grid(ga.l, ga.n);
    KernelTable half = kernel_table(g, 0.5);
    KernelTable quarter = kernel_table(g, 0.25);
    CsvTable table = kernel_csv(half, quarter, g);
    emit(out, "kernel", kernel_summary(half, quarter, g), &table);
    return 0;
}

// Quote check names: they are free text and may contain commas.
std::string verify_csv_string(const std::vector<SuiteReport>& reports) {
    std::string out = "suite,name,pass,value,bound\n";
    for (const SuiteReport& rep : reports)
        for (const CheckResult& c : rep.checks) {
            out += rep.suite + ",\"" + c.name + "\"," +
                   (c.pass ? "1" : "0") + "," + format_g17(c.value) + "," +
                   format_g17(c.bound) + "\n";
        }
    return out;
}

int run_verify(const std::string& suite, std::uint64_t seed,
               const GridArgs& ga, const OutputArgs& out) {
    Grid g = make_grid(ga.l, ga.n);
    std::vector<SuiteReport> reports = wavemax::run_verify(suite, g, seed);
    std::fputs(verify_text(reports).c_str(), stdout);
    if (!out.dir.empty()) {
        fs::create_directories(out.dir);
        if (out.want_json())
            write_text_file(
                fs::path(out.dir) / "verify.json",
                json_to_string(verify_summary(reports, suite, seed, g)));
        if (out.want_csv())
            write_text_file(fs::path(out.dir) / "verify.csv",
                            verify_csv_string(reports));
    }
    for (const SuiteReport& rep : reports)
        if (!rep.passed()) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bell-shaped solitary waves of the steady Whitham equation "
                 "via constrained maximization"};
    app.require_subcommand(1);

    // --- solve ---
    double s_alpha = 0.0;
    GridArgs s_grid;
    SolverConfig s_cfg;
    std::string s_warm;
    OutputArgs s_out;
    CLI::App* solve = app.add_subcommand("solve",
        "maximize J^2 under the gauge constraint at one alpha");
    solve->add_option("--alpha", s_alpha, "constraint parameter alpha > 0")
        ->required();
    add_grid_options(solve, s_grid);
    solve->add_option("--tol", s_cfg.tol, "relative EL-residual target")
        ->capture_default_str();
    solve->add_option("--max-iter", s_cfg.max_iter, "iteration cap")
        ->capture_default_str();
    solve->add_option("--warm-start", s_warm,
                      "profile CSV (x,f) on the same grid to start from");
    add_output_options(solve, s_out);

    // --- sweep ---
    double w_min = 0.0, w_max = 0.0;
    int w_steps = 8;
    bool w_linear = false, w_cold = false;
    GridArgs w_grid;
    SolverConfig w_cfg;
    OutputArgs w_out;
    CLI::App* sweep = app.add_subcommand("sweep",
        "continue the branch across an alpha range (warm-started, "
        "descending)");
    sweep->add_option("--alpha-min", w_min, "smallest alpha")->required();
    sweep->add_option("--alpha-max", w_max, "largest alpha")->required();
    sweep->add_option("--steps", w_steps, "number of alpha values")
        ->capture_default_str();
    sweep->add_flag("--linear", w_linear,
                    "space alphas linearly (default: log-spaced)");
    sweep->add_flag("--cold", w_cold,
                    "solve every alpha from the cold initial guess");
    add_grid_options(sweep, w_grid);
    sweep->add_option("--tol", w_cfg.tol, "relative EL-residual target")
        ->capture_default_str();
    sweep->add_option("--max-iter", w_cfg.max_iter, "iteration cap per alpha")
        ->capture_default_str();
    add_output_options(sweep, w_out);

    // --- threshold ---
    double t_lo = 0.5, t_hi = 3.0, t_tol = 0.05;
    GridArgs t_grid;
    OutputArgs t_out;
    CLI::App* threshold = app.add_subcommand("threshold",
        "bisect for the smallest alpha admitting a converged bell-shaped "
        "maximizer");
    threshold->add_option("--lo", t_lo, "bracket lower end")
        ->capture_default_str();
    threshold->add_option("--hi", t_hi, "bracket upper end")
        ->capture_default_str();
    threshold->add_option("--tol", t_tol, "target bracket width")
        ->capture_default_str();
    add_grid_options(threshold, t_grid);
    add_output_options(threshold, t_out);

    // --- wave ---
    double v_alpha = 0.0;
    std::string v_from;
    GridArgs v_grid;
    SolverConfig v_cfg;
    OutputArgs v_out;
    CLI::App* wave = app.add_subcommand("wave",
        "transform the maximizer into a solitary wave of the steady "
        "equation, with verified residuals");
    wave->add_option("--alpha", v_alpha, "constraint parameter alpha > 0")
        ->required();
    wave->add_option("--from", v_from,
                     "maximizer profile CSV (x,f) to transform instead of "
                     "solving");
    add_grid_options(wave, v_grid);
    wave->add_option("--tol", v_cfg.tol, "relative EL-residual target")
        ->capture_default_str();
    wave->add_option("--max-iter", v_cfg.max_iter, "iteration cap")
        ->capture_default_str();
    add_output_options(wave, v_out);

    // --- kernel ---
    GridArgs k_grid;
    OutputArgs k_out;
    CLI::App* kernel = app.add_subcommand("kernel",
        "tabulate the real-space kernels K_{1/2} and K_{1/4}");
    add_grid_options(kernel, k_grid);
    add_output_options(kernel, k_out);

    // --- verify ---
    std::string y_suite = "all";
    std::uint64_t y_seed = 0;
    GridArgs y_grid;
    OutputArgs y_out;
    CLI::App* verify = app.add_subcommand("verify",
        "run seeded property suites and report per-check numbers");
    {
        std::vector<std::string> names = verify_suite_names();
        names.push_back("all");
        verify->add_option("--suite", y_suite, "suite to run")
            ->check(CLI::IsMember(names))
            ->capture_default_str();
    }
    verify->add_option("--seed", y_seed, "seed for the randomized checks")
        ->capture_default_str();
    add_grid_options(verify, y_grid);
    add_output_options(verify, y_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // keep --help at 0, map all errors to 2
    }

    try {
        if (app.got_subcommand(solve)) {
            s_out.validate();
            return run_solve(s_alpha, s_grid, s_cfg, s_warm, s_out);
        }
        if (app.got_subcommand(sweep)) {
            w_out.validate();
            return run_sweep(w_min, w_max, w_steps, w_linear, w_cold, w_grid,
                             w_cfg, w_out);
        }
        if (app.got_subcommand(threshold)) {
            t_out.validate();
            return run_threshold(t_lo, t_hi, t_tol, t_grid, t_out);
        }
        if (app.got_subcommand(wave)) {
            v_out.validate();
            return run_wave(v_alpha, v_from, v_grid, v_cfg, v_out);
        }
        if (app.got_subcommand(kernel)) {
            k_out.validate();
            return run_kernel(k_grid, k_out);
        }
        if (app.got_subcommand(verify)) {
            y_out.validate();
            return run_verify(y_suite, y_seed, y_grid, y_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wavemax: %s\n", e.what());
        return 2;
    }
    return 2;  // unreachable: require_subcommand(1) guarantees a branch
}
