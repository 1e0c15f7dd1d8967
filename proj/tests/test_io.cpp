// Serialization: 17-significant-digit CSV numbers that round-trip exactly,
// fixed JSON key order (the first ten keys of solve and wave summaries are a
// stable contract), and the profile loader's grid checks.

#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "wavemax/io.hpp"

using namespace wavemax;
namespace fs = std::filesystem;

namespace {
const std::vector<std::string> kMandatoryKeys = {
    "alpha",      "J",          "alphaJ2", "pairing",   "peak_ratio",
    "residual",   "iterations", "converged", "mu",      "sup_phi"};

std::vector<std::string> key_order(const ordered_json& j) {
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    return keys;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("wavemax_io_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};
}  // namespace

TEST_CASE("format_g17 round-trips doubles exactly") {
    for (double v : {1.0 / 3.0, 2.0 * std::acos(0.0), -0.1, 1e-300, 1e300,
                     6.62607015e-34, 0.0, -42.0}) {
        std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);  // C locale decimal point
    }
    CHECK(format_g17(1.0) == "1");  // clean integers for boolean columns
    CHECK(format_g17(0.0) == "0");
}

TEST_CASE("csv_to_string layout and validation") {
    CsvTable t;
    t.header = {"a", "b"};
    t.columns = {{1.0, 2.0}, {3.0, 0.5}};
    CHECK(csv_to_string(t) == "a,b\n1,3\n2,0.5\n");

    CsvTable ragged = t;
    ragged.columns[1].pop_back();
    CHECK_THROWS_AS(csv_to_string(ragged), std::invalid_argument);

    CsvTable mismatched = t;
    mismatched.header.pop_back();
    CHECK_THROWS_AS(csv_to_string(mismatched), std::invalid_argument);
}

TEST_CASE("profile CSV round trip is bit exact") {
    TempDir tmp;
    Grid g = make_grid(0, 16);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GridFunction f(g);
    for (double& t : f.v) t = u(rng) * std::pow(10.0, -12.0 * u(rng));

    fs::path p = tmp.path / "profile.csv";
    write_text_file(p, csv_to_string(profile_csv(f, "f")));
    GridFunction back = read_profile_csv(p, g);
    for (int j = 0; j < g.n; ++j) CHECK(back.v[j] == f.v[j]);
}

TEST_CASE("read_profile_csv rejects malformed input") {
    TempDir tmp;
    Grid g = make_grid(0, 16);
    Grid other = make_grid(0, 32);
    GridFunction f(g);
    for (int j = 0; j < g.n; ++j) f.v[j] = j;
    fs::path p = tmp.path / "profile.csv";
    write_text_file(p, csv_to_string(profile_csv(f, "f")));

    SECTION("missing file") {
        CHECK_THROWS_AS(read_profile_csv(tmp.path / "nope.csv", g),
                        std::invalid_argument);
    }
    SECTION("written on a different grid") {
        CHECK_THROWS_AS(read_profile_csv(p, other), std::invalid_argument);
    }
    SECTION("truncated file") {
        std::string body = csv_to_string(profile_csv(f, "f"));
        body.erase(body.find_last_of('\n', body.size() - 2) + 1);  // last row
        write_text_file(p, body);
        CHECK_THROWS_AS(read_profile_csv(p, g), std::invalid_argument);
    }
    SECTION("non-numeric entry") {
        write_text_file(p, "x,f\n-1,zero\n");
        CHECK_THROWS_AS(read_profile_csv(p, g), std::invalid_argument);
    }
    SECTION("single column") {
        write_text_file(p, "x\n-1\n");
        CHECK_THROWS_AS(read_profile_csv(p, g), std::invalid_argument);
    }
}

TEST_CASE("solve and wave summaries share the mandatory key prefix") {
    Grid g = make_grid(6, 4096);
    OrliczParams p = make_orlicz(3.0);
    SolverConfig cfg;
    // The evaluator fills every result field without running the solver.
    MaximizerResult r = evaluate_state(initial_guess(p, g), p, cfg.tol);

    ordered_json js = solve_summary(r, 3.0, g, cfg);
    std::vector<std::string> keys = key_order(js);
    REQUIRE(keys.size() >= kMandatoryKeys.size());
    for (std::size_t i = 0; i < kMandatoryKeys.size(); ++i)
        CHECK(keys[i] == kMandatoryKeys[i]);
    CHECK(js["alpha"] == 3.0);
    CHECK(js["l"] == 6);
    CHECK(js["n"] == 4096);
    CHECK(js["converged"] == false);
    CHECK_FALSE(js["advice"].get<std::string>().empty());
    // sup_phi is the wave height (mu/2alpha) sup f implied by the state.
    CHECK(js["sup_phi"].get<double>() ==
          Catch::Approx(r.mu * sup_norm(r.f) / 6.0).epsilon(1e-15));

    SolitaryWave w;
    w.alpha = 3.0;
    w.mu = 1.1;
    w.phi = GridFunction(g);
    for (double& t : w.phi.v) t = 0.01;
    ordered_json jw = wave_summary(w, r, g);
    std::vector<std::string> wkeys = key_order(jw);
    REQUIRE(wkeys.size() >= kMandatoryKeys.size());
    for (std::size_t i = 0; i < kMandatoryKeys.size(); ++i)
        CHECK(wkeys[i] == kMandatoryKeys[i]);
    CHECK(jw["mu"] == 1.1);
    CHECK(jw.contains("steady_residual"));
    CHECK(jw.contains("branch_residual"));
    CHECK(jw.contains("mass_identity_gap"));
}

TEST_CASE("json_to_string is deterministic and parseable") {
    ordered_json j;
    j["b"] = 2;
    j["a"] = 1.5;
    std::string s1 = json_to_string(j), s2 = json_to_string(j);
    CHECK(s1 == s2);
    CHECK(s1.back() == '\n');
    ordered_json back = ordered_json::parse(s1);
    CHECK(back["a"] == 1.5);
    // Insertion order survives, no alphabetic reordering.
    CHECK(s1.find("\"b\"") < s1.find("\"a\""));
}

TEST_CASE("kernel table CSV skips the singular node") {
    Grid g = make_grid(0, 16);
    KernelTable half = kernel_table(g, 0.5);
    KernelTable quarter = kernel_table(g, 0.25);
    CsvTable t = kernel_csv(half, quarter, g);
    CHECK(t.header == std::vector<std::string>{"x", "K_half", "K_quarter"});
    REQUIRE(t.columns[0].size() == 15);  // n - 1 rows
    for (double x : t.columns[0]) CHECK(x != 0.0);
    for (double k : t.columns[1]) CHECK(std::isfinite(k));
}

TEST_CASE("sweep CSV prints converged as 0/1") {
    SweepRow a, b;
    a.alpha = 3.0;
    a.converged = true;
    b.alpha = 5.0;
    b.converged = false;
    std::string s = csv_to_string(sweep_csv({a, b}));
    CHECK(s.find("alpha,J,alphaJ2,peak_ratio,mu,converged") == 0);
    CHECK(s.find(",1\n") != std::string::npos);
    CHECK(s.find(",0\n") != std::string::npos);
}

TEST_CASE("verify reports serialize with per-check values") {
    Grid g = make_grid(0, 16);
    SuiteReport rep{"demo", {CheckResult{"first", true, 0.5, 1.0},
                             CheckResult{"second", false, 2.0, 1.0}}};
    ordered_json j = verify_summary({rep}, "demo", 0, g);
    CHECK(j["all_passed"] == false);
    CHECK(j["checks_total"] == 2);
    CHECK(j["checks_passed"] == 1);
    CHECK(j["suites"][0]["checks"][0]["name"] == "first");
    std::string text = verify_text({rep});
    CHECK(text.find("[PASS]") != std::string::npos);
    CHECK(text.find("[FAIL]") != std::string::npos);
    CHECK(text.find("1/2 checks passed") != std::string::npos);
}

TEST_CASE("write_text_file creates parent directories") {
    TempDir tmp;
    fs::path p = tmp.path / "deep" / "nest" / "out.txt";
    write_text_file(p, "payload\n");
    std::ifstream in(p);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "payload");
}
