#pragma once
// JSON summaries and CSV tables.
//
// Formatting contract (downstream tooling and the determinism check rely on
// every clause):
//   - CSV numbers carry 17 significant digits with '.' as the decimal point;
//     the process never calls setlocale, so snprintf stays in the C locale.
//   - JSON uses a fixed key order (nlohmann ordered_json) and the library's
//     deterministic shortest-round-trip double serialization.
//   - No timestamps, runtimes, or absolute paths appear in any output, so a
//     rerun with identical inputs produces byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wavemax/grid.hpp"
#include "wavemax/kernel.hpp"
#include "wavemax/maximize.hpp"
#include "wavemax/sweep.hpp"
#include "wavemax/verify.hpp"
#include "wavemax/whitham.hpp"

namespace wavemax {

using ordered_json = nlohmann::ordered_json;

// 17 significant digits in the C locale; "%.17g" prints integers without a
// decimal point, which keeps boolean 0/1 columns clean.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;  // one vector per header entry
};

inline std::string csv_to_string(const CsvTable& t) {
    if (t.header.empty() || t.header.size() != t.columns.size())
        throw std::invalid_argument("csv_to_string: header/column mismatch");
    const std::size_t rows = t.columns[0].size();
    for (const auto& c : t.columns)
        if (c.size() != rows)
            throw std::invalid_argument("csv_to_string: ragged columns");
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) out += ',';
        out += t.header[i];
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) out += ',';
            out += format_g17(t.columns[i][r]);
        }
        out += '\n';
    }
    return out;
}

// Two-column profile table (x against one sampled function).
inline CsvTable profile_csv(const GridFunction& f, const std::string& name) {
    CsvTable t;
    t.header = {"x", name};
    t.columns = {f.grid->x, f.v};
    return t;
}

inline CsvTable sweep_csv(const std::vector<SweepRow>& rows) {
    CsvTable t;
    t.header = {"alpha", "J", "alphaJ2", "peak_ratio", "mu", "converged"};
    t.columns.assign(6, {});
    for (const SweepRow& r : rows) {
        t.columns[0].push_back(r.alpha);
        t.columns[1].push_back(r.J);
        t.columns[2].push_back(r.alphaJ2);
        t.columns[3].push_back(r.peak_ratio);
        t.columns[4].push_back(r.mu);
        t.columns[5].push_back(r.converged ? 1.0 : 0.0);
    }
    return t;
}

// Side-by-side table of both kernels; the x = 0 node is skipped because K is
// not sampled at the singularity.
inline CsvTable kernel_csv(const KernelTable& half, const KernelTable& quarter,
                           const Grid& g) {
    CsvTable t;
    t.header = {"x", "K_half", "K_quarter"};
    t.columns.assign(3, {});
    for (int j = 0; j < g.n; ++j) {
        if (j == half.singular_index) continue;
        t.columns[0].push_back(g.x[j]);
        t.columns[1].push_back(half.K[j]);
        t.columns[2].push_back(quarter.K[j]);
    }
    return t;
}

// ---------------------------------------------------------------------------
// JSON summaries.  solve and wave share a mandatory ten-key prefix:
// {alpha, J, alphaJ2, pairing, peak_ratio, residual, iterations, converged,
//  mu, sup_phi}; diagnostic keys follow.
// ---------------------------------------------------------------------------

inline ordered_json solve_summary(const MaximizerResult& r, double alpha,
                                  const Grid& g, const SolverConfig& cfg) {
    ordered_json j;
    j["alpha"] = alpha;
    j["J"] = r.J;
    j["alphaJ2"] = r.alphaJ2;
    j["pairing"] = r.pairing;
    j["peak_ratio"] = r.peak_ratio;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["mu"] = r.mu;
    // phi = (mu / 2 alpha) f, so the wave height is known already here.
    j["sup_phi"] = r.mu * sup_norm(r.f) / (2.0 * alpha);
    j["l"] = g.l;
    j["n"] = g.n;
    j["tol"] = cfg.tol;
    j["max_iter"] = cfg.max_iter;
    j["resolved"] = r.resolved;
    j["decay_ratio"] = r.decay_ratio;
    j["truncation_ratio"] = r.truncation_ratio;
    j["advice"] = r.advice;
    return j;
}

inline ordered_json wave_summary(const SolitaryWave& w, const MaximizerResult& r,
                                 const Grid& g) {
    ordered_json j;
    j["alpha"] = w.alpha;
    j["J"] = r.J;
    j["alphaJ2"] = r.alphaJ2;
    j["pairing"] = r.pairing;
    j["peak_ratio"] = r.peak_ratio;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["mu"] = w.mu;
    j["sup_phi"] = w.diagnostics.sup_phi;
    j["steady_residual"] = w.diagnostics.steady_residual;
    j["steady_residual_l2"] = w.diagnostics.steady_residual_l2;
    j["branch_residual"] = w.diagnostics.branch_residual;
    j["mass_identity_gap"] = w.diagnostics.mass_identity_gap;
    j["mu_over_2"] = w.diagnostics.mu_over_2;
    j["scaling_ratio"] = w.diagnostics.scaling_ratio;
    j["possible_extreme"] = w.diagnostics.possible_extreme;
    j["l"] = g.l;
    j["n"] = g.n;
    return j;
}

inline ordered_json sweep_summary(const std::vector<SweepRow>& rows,
                                  const Grid& g, bool cold) {
    ordered_json j;
    j["steps"] = rows.size();
    j["cold"] = cold;
    j["l"] = g.l;
    j["n"] = g.n;
    bool all_conv = true, strictly_dec = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        all_conv = all_conv && rows[i].converged;
        if (i > 0 && !(rows[i].alphaJ2 < rows[i - 1].alphaJ2))
            strictly_dec = false;
    }
    j["all_converged"] = all_conv;
    j["alphaJ2_strictly_decreasing"] = strictly_dec;
    ordered_json arr = ordered_json::array();
    for (const SweepRow& r : rows) {
        ordered_json row;
        row["alpha"] = r.alpha;
        row["J"] = r.J;
        row["alphaJ2"] = r.alphaJ2;
        row["peak_ratio"] = r.peak_ratio;
        row["mu"] = r.mu;
        row["converged"] = r.converged;
        row["residual"] = r.residual;
        row["iterations"] = r.iterations;
        row["resolved"] = r.resolved;
        row["note"] = r.note;
        arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    return j;
}

inline ordered_json threshold_summary(const ThresholdEstimate& est, double tol,
                                      const Grid& g) {
    ordered_json j;
    j["lo"] = est.lo;
    j["hi"] = est.hi;
    j["width"] = est.hi - est.lo;
    j["tol"] = tol;
    j["predicate_delta"] = est.delta;
    j["l"] = g.l;
    j["n"] = g.n;
    return j;
}

inline ordered_json kernel_summary(const KernelTable& half,
                                   const KernelTable& quarter, const Grid& g) {
    ordered_json j;
    j["l"] = g.l;
    j["n"] = g.n;
    j["mass_half"] = kernel_mass(half, g);
    j["mass_quarter"] = kernel_mass(quarter, g);
    j["mass_defect_half"] = std::abs(kernel_mass(half, g) - 1.0);
    j["mass_defect_quarter"] = std::abs(kernel_mass(quarter, g) - 1.0);
    return j;
}

inline ordered_json verify_summary(const std::vector<SuiteReport>& reports,
                                   const std::string& suite, std::uint64_t seed,
                                   const Grid& g) {
    ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["l"] = g.l;
    j["n"] = g.n;
    bool all = true;
    int total = 0, passed = 0;
    ordered_json arr = ordered_json::array();
    for (const SuiteReport& rep : reports) {
        ordered_json s;
        s["suite"] = rep.suite;
        ordered_json checks = ordered_json::array();
        for (const CheckResult& c : rep.checks) {
            ++total;
            if (c.pass) ++passed;
            ordered_json cj;
            cj["name"] = c.name;
            cj["pass"] = c.pass;
            cj["value"] = c.value;
            cj["bound"] = c.bound;
            checks.push_back(std::move(cj));
        }
        s["checks"] = std::move(checks);
        s["passed"] = rep.passed();
        all = all && rep.passed();
        arr.push_back(std::move(s));
    }
    j["suites"] = std::move(arr);
    j["checks_total"] = total;
    j["checks_passed"] = passed;
    j["all_passed"] = all;
    return j;
}

inline std::string verify_text(const std::vector<SuiteReport>& reports) {
    std::string out;
    int total = 0, passed = 0;
    for (const SuiteReport& rep : reports) {
        out += "== suite " + rep.suite + " ==\n";
        for (const CheckResult& c : rep.checks) {
            ++total;
            if (c.pass) ++passed;
            char line[256];
            std::snprintf(line, sizeof line,
                          "  [%s] %-64s value=%.6e bound=%.6e\n",
                          c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                          c.bound);
            out += line;
        }
    }
    out += "verify: " + std::to_string(passed) + "/" + std::to_string(total) +
           " checks passed\n";
    return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string json_to_string(const ordered_json& j) {
    return j.dump(2) + "\n";
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("write_text_file: cannot open " +
                                 path.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("write_text_file: short write to " +
                                 path.string());
}

// Profile loader for --warm-start / --from: a two-column CSV (x, value) on
// exactly the grid the run was configured with.
inline GridFunction read_profile_csv(const std::filesystem::path& path,
                                     const Grid& g) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("read_profile_csv: cannot open " +
                                    path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("read_profile_csv: empty file " +
                                    path.string());
    GridFunction f(g);
    int j = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument(
                "read_profile_csv: expected two comma-separated columns in " +
                path.string());
        double x = 0, v = 0;
        try {
            x = std::stod(line.substr(0, comma));
            v = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("read_profile_csv: bad number in " +
                                        path.string() + ": " + line);
        }
        if (j >= g.n)
            throw std::invalid_argument(
                "read_profile_csv: more rows than grid nodes (n = " +
                std::to_string(g.n) + ") in " + path.string());
        if (std::abs(x - g.x[j]) > 1e-9 * (1.0 + std::abs(g.x[j])))
            throw std::invalid_argument(
                "read_profile_csv: node " + std::to_string(j) + " has x = " +
                format_g17(x) + ", expected " + format_g17(g.x[j]) +
                " — profile was written on a different grid (l, n)");
        f.v[j++] = v;
    }
    if (j != g.n)
        throw std::invalid_argument(
            "read_profile_csv: got " + std::to_string(j) + " rows, grid has " +
            std::to_string(g.n));
    return f;
}

}  // namespace wavemax
