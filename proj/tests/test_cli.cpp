// End-to-end tests of the command-line binary: exit codes (0 success,
// 2 validation, 3 non-convergence), the JSON/CSV file outputs, byte-identical
// reruns, and the WAVEMAX_OUT_DIR environment override.  The binary path is
// injected at build time through WAVEMAX_BIN.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

const fs::path& base_dir() {
    static fs::path p = [] {
        fs::path d = fs::temp_directory_path() /
                     ("wavemax_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return p;
}

struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the binary with the given arguments; stdout/stderr captured to files
// in `tag`'s scratch directory.  The inherited environment never carries
// WAVEMAX_OUT_DIR unless `env` adds it.
CliRun run_cli(const std::string& args, const std::string& tag,
               const std::string& env = "") {
    fs::path dir = base_dir() / tag;
    fs::create_directories(dir);
    fs::path so = dir / "stdout.txt", se = dir / "stderr.txt";
    std::string cmd = "unset WAVEMAX_OUT_DIR; " + env + (env.empty() ? "" : " ") +
                      std::string(WAVEMAX_BIN) + " " + args + " > " +
                      so.string() + " 2> " + se.string();
    int status = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(so);
    r.err = slurp(se);
    return r;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("solve prints a complete summary and exits 0") {
    CliRun r = run_cli("solve --alpha 10", "solve_plain");
    REQUIRE(r.exit_code == 0);
    ordered_json j = ordered_json::parse(r.out);
    for (const char* k :
         {"alpha", "J", "alphaJ2", "pairing", "peak_ratio", "residual",
          "iterations", "converged", "mu", "sup_phi"})
        CHECK(j.contains(k));
    CHECK(j["converged"] == true);
    CHECK(j["alpha"] == 10.0);
    double aj2 = j["alphaJ2"].get<double>();
    CHECK(aj2 > 1.0);
    CHECK(aj2 < 1.5);
    CHECK(j["residual"].get<double>() <= 1e-10);
}

TEST_CASE("solve writes json and csv and reruns byte-identically") {
    fs::path d1 = base_dir() / "solve_out1";
    fs::path d2 = base_dir() / "solve_out2";
    CliRun r1 = run_cli("solve --alpha 10 --out " + d1.string(), "solve_o1");
    CliRun r2 = run_cli("solve --alpha 10 --out " + d2.string(), "solve_o2");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    REQUIRE(fs::exists(d1 / "solve.json"));
    REQUIRE(fs::exists(d1 / "solve.csv"));
    // File mirrors stdout, and a rerun reproduces it byte for byte.
    CHECK(slurp_file(d1 / "solve.json") == r1.out);
    CHECK(slurp_file(d1 / "solve.json") == slurp_file(d2 / "solve.json"));
    CHECK(slurp_file(d1 / "solve.csv") == slurp_file(d2 / "solve.csv"));
    // The CSV holds the maximizer profile on the full grid.
    auto ls = lines_of(slurp_file(d1 / "solve.csv"));
    REQUIRE(ls.size() == 4097);  // header + n rows
    CHECK(ls[0] == "x,f");
}

TEST_CASE("format selection") {
    fs::path d = base_dir() / "solve_json_only";
    CliRun r = run_cli("solve --alpha 10 --format json --out " + d.string(),
                       "solve_fmt");
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(d / "solve.json"));
    CHECK_FALSE(fs::exists(d / "solve.csv"));
    // --format without a destination is a usage error.
    CliRun bad = run_cli("solve --alpha 10 --format json", "solve_fmt_bad");
    CHECK(bad.exit_code == 2);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("WAVEMAX_OUT_DIR supplies the output directory") {
    fs::path d = base_dir() / "solve_envdir";
    CliRun r = run_cli("solve --alpha 10", "solve_env",
                       "WAVEMAX_OUT_DIR=" + d.string());
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(d / "solve.json"));
    CHECK(fs::exists(d / "solve.csv"));
}

TEST_CASE("validation failures exit 2") {
    CHECK(run_cli("solve --alpha -1", "bad_alpha").exit_code == 2);
    CHECK(run_cli("solve", "missing_alpha").exit_code == 2);
    CHECK(run_cli("solve --alpha 3 --no-such-flag", "bad_flag").exit_code == 2);
    CHECK(run_cli("frobnicate", "bad_subcommand").exit_code == 2);
    CHECK(run_cli("", "no_subcommand").exit_code == 2);
    CHECK(run_cli("verify --suite bogus", "bad_suite").exit_code == 2);
    CHECK(run_cli("sweep --alpha-min 5 --alpha-max 3", "bad_range").exit_code ==
          2);
    // A bracket that does not straddle the threshold is a validation error.
    CHECK(run_cli("threshold --lo 3 --hi 5", "bad_bracket").exit_code == 2);
}

TEST_CASE("non-convergence exits 3 with an honest summary") {
    CliRun r = run_cli("solve --alpha 1 --max-iter 50", "nonconv");
    REQUIRE(r.exit_code == 3);
    ordered_json j = ordered_json::parse(r.out);
    CHECK(j["converged"] == false);
    CHECK(j["iterations"] == 50);
    CHECK_FALSE(j["advice"].get<std::string>().empty());
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("wave emits the transformed profile with residuals") {
    fs::path d = base_dir() / "wave_out";
    CliRun r = run_cli("wave --alpha 5 --out " + d.string(), "wave");
    REQUIRE(r.exit_code == 0);
    ordered_json j = ordered_json::parse(r.out);
    double mu = j["mu"].get<double>();
    CHECK(mu > 1.0);
    CHECK(mu < 2.0);
    CHECK(j["steady_residual"].get<double>() <= 1e-8);
    CHECK(j["branch_residual"].get<double>() <= 1e-7);
    CHECK(j["mass_identity_gap"].get<double>() <= 1e-6);
    auto ls = lines_of(slurp_file(d / "wave.csv"));
    REQUIRE(ls.size() == 4097);
    CHECK(ls[0] == "x,phi");

    SECTION("wave --from re-evaluates a stored profile") {
        fs::path ds = base_dir() / "wave_from_solve";
        REQUIRE(run_cli("solve --alpha 5 --out " + ds.string(), "wave_pre")
                    .exit_code == 0);
        CliRun rf = run_cli("wave --alpha 5 --from " +
                                (ds / "solve.csv").string(),
                            "wave_from");
        REQUIRE(rf.exit_code == 0);
        ordered_json jf = ordered_json::parse(rf.out);
        CHECK(jf["mu"].get<double>() == Catch::Approx(mu).epsilon(1e-10));
        CHECK(jf["converged"] == true);
    }

    SECTION("wave --from on the wrong grid is a validation error") {
        fs::path ds = base_dir() / "wave_wrong_grid";
        REQUIRE(run_cli("solve --alpha 5 --l 5 --n 2048 --out " + ds.string(),
                        "wave_pre2")
                    .exit_code == 0);
        CliRun rf = run_cli("wave --alpha 5 --from " +
                                (ds / "solve.csv").string(),
                            "wave_from_bad");
        CHECK(rf.exit_code == 2);
    }
}

TEST_CASE("sweep writes a strictly decreasing alphaJ2 table") {
    fs::path d = base_dir() / "sweep_out";
    CliRun r = run_cli(
        "sweep --alpha-min 3 --alpha-max 50 --steps 8 --out " + d.string(),
        "sweep");
    REQUIRE(r.exit_code == 0);
    ordered_json j = ordered_json::parse(r.out);
    CHECK(j["steps"] == 8);
    CHECK(j["all_converged"] == true);
    CHECK(j["alphaJ2_strictly_decreasing"] == true);
    CHECK(j["rows"].size() == 8);
    CHECK(j["rows"][0]["alpha"] == 3.0);
    CHECK(j["rows"][7]["alpha"] == 50.0);

    auto ls = lines_of(slurp_file(d / "sweep.csv"));
    REQUIRE(ls.size() == 9);  // header + 8 rows
    CHECK(ls[0] == "alpha,J,alphaJ2,peak_ratio,mu,converged");
    double prev = 1e300;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        // Third column is alphaJ2.
        std::stringstream ss(ls[i]);
        std::string cell;
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        std::getline(ss, cell, ',');
        double aj2 = std::stod(cell);
        CHECK(aj2 < prev);
        prev = aj2;
    }
}

TEST_CASE("kernel tables and masses") {
    fs::path d = base_dir() / "kernel_out";
    CliRun r = run_cli("kernel --out " + d.string(), "kernel");
    REQUIRE(r.exit_code == 0);
    ordered_json j = ordered_json::parse(r.out);
    CHECK(j["mass_defect_half"].get<double>() < 1e-6);
    CHECK(j["mass_defect_quarter"].get<double>() < 1e-6);
    auto ls = lines_of(slurp_file(d / "kernel.csv"));
    REQUIRE(ls.size() == 4096);  // header + (n - 1) rows, singular node absent
    CHECK(ls[0] == "x,K_half,K_quarter");
}

TEST_CASE("verify runs a named suite end to end") {
    CliRun r = run_cli("verify --suite kernel", "verify_kernel");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("checks passed") != std::string::npos);
}
