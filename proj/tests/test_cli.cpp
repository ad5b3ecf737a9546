#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "optomech/cli.hpp"

using optomech::run_cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    return fs::temp_directory_path() / ("omspec_test_" + name);
}

std::string write_config(const std::string& name, const std::string& body) {
    const fs::path p = scratch(name + ".json");
    std::ofstream f(p);
    f << body;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Parsed CSV: header names plus double rows.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream lines(text);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        std::vector<std::string> parts;
        while (std::getline(cells, cell, ',')) parts.push_back(cell);
        if (first) {
            out.header = parts;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : parts) row.push_back(std::stod(c));
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace

TEST_CASE("usage errors and unknown subcommands exit nonzero") {
    CHECK(run_cli({}) != 0);
    CHECK(run_cli({"frobnicate"}) != 0);
    CHECK(run_cli({"spectrum", "--detuning-sign", "up"}) != 0);
}

TEST_CASE("config schema violations exit 1") {
    const std::string unknown = write_config("unknown_key", R"({"model": {"masss": 1.0}})");
    CHECK(run_cli({"--config", unknown, "spectrum"}) == 1);
    const std::string wrong_type = write_config("wrong_type", R"({"model": {"mass": "big"}})");
    CHECK(run_cli({"--config", wrong_type, "spectrum"}) == 1);
    const std::string bad_grid =
        write_config("bad_grid", R"({"grid": {"omega_min": 2.0, "omega_max": 1.0}})");
    CHECK(run_cli({"--config", bad_grid, "spectrum"}) == 1);
    const std::string bad_json = write_config("bad_json", "{nope");
    CHECK(run_cli({"--config", bad_json, "spectrum"}) == 1);
    CHECK(run_cli({"--config", scratch("missing.json").string(), "spectrum"}) == 1);
}

TEST_CASE("model validation failures exit 1") {
    const std::string zero_det =
        write_config("zero_det", R"({"model": {"detuning": 0.0}})");
    CHECK(run_cli({"--config", zero_det, "spectrum"}) == 1);
    const std::string overdamped =
        write_config("overdamped", R"({"model": {"kappa_m": 2.0}})");
    CHECK(run_cli({"--config", overdamped, "spectrum"}) == 1);
    // Asymmetry away from a sideband is rejected up front.
    const std::string off_sideband =
        write_config("off_sideband", R"({"model": {"detuning": 0.5}})");
    CHECK(run_cli({"--config", off_sideband, "asymmetry"}) == 1);
}

TEST_CASE("spectrum emits both detunings by default and one on request") {
    const fs::path out = scratch("spectrum.csv");
    REQUIRE(run_cli({"spectrum", "--output", out.string()}) == 0);
    const Csv both = parse_csv(slurp(out));
    REQUIRE(both.header.size() == 7);
    CHECK(both.header[0] == "detuning");
    CHECK(both.header[6] == "s_yy_total");
    CHECK(both.rows.size() == 1002);
    CHECK(both.rows.front()[0] == 1.0);
    CHECK(both.rows.back()[0] == -1.0);

    REQUIRE(run_cli({"spectrum", "--detuning-sign", "-", "--output", out.string()}) == 0);
    const Csv red = parse_csv(slurp(out));
    REQUIRE(red.header.size() == 6);
    CHECK(red.header[0] == "omega");
    CHECK(red.rows.size() == 501);
}

TEST_CASE("json format carries the same table") {
    const fs::path out = scratch("spectrum.json");
    REQUIRE(run_cli({"spectrum", "--detuning-sign", "+", "--format", "json", "--output",
                     out.string()}) == 0);
    const nlohmann::json doc = nlohmann::json::parse(slurp(out));
    REQUIRE(doc.contains("columns"));
    REQUIRE(doc.contains("rows"));
    CHECK(doc["columns"].size() == 6);
    CHECK(doc["rows"].size() == 501);
    CHECK(doc["rows"][0].size() == 6);
}

TEST_CASE("a quiet probe on the blue sideband leaves the output spectrum flat") {
    const std::string cfg = write_config("flat", R"({
        "model": {"kappa_m": 1e-4, "n_occ": 0.0, "kappa_r": 0.02,
                  "detuning": 1.0, "g0_bar": 2e-4},
        "grid": {"omega_min": 0.9995, "omega_max": 1.0005, "n_points": 201}
    })");
    const fs::path out = scratch("flat.csv");
    REQUIRE(run_cli({"--config", cfg, "spectrum", "--detuning-sign", "+", "--output",
                     out.string()}) == 0);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.rows.size() == 201);
    // In units of the imprecision floor the record hides the mechanical line:
    // the cross term swallows the zero-point motion on resonance, leaving a
    // residual back-action bump under half a percent.
    for (const auto& row : csv.rows) {
        const double in_floor_units = row[5] / row[1];
        CHECK(in_floor_units > 0.995);
        CHECK(in_floor_units < 1.005);
    }
    // The shipped example config describes the same operating point.
    const fs::path shipped = fs::path("..") / "configs" / "spectrum_flat.json";
    if (fs::exists(shipped))
        CHECK(run_cli({"--config", shipped.string(), "spectrum", "--detuning-sign", "+",
                       "--output", out.string()}) == 0);
}

TEST_CASE("asymmetry subcommand reports eta = 1/n per occupancy row") {
    const fs::path out = scratch("asym.csv");
    REQUIRE(run_cli({"asymmetry", "--output", out.string()}) == 0);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.header.size() == 6);
    REQUIRE(csv.rows.size() == 3);
    for (const auto& row : csv.rows) {
        const double n = row[0], eta = row[4], n_est = row[5];
        CHECK(eta * n == doctest::Approx(1.0).epsilon(0.01));
        CHECK(n_est == doctest::Approx(n).epsilon(0.01));
    }
}

TEST_CASE("asymmetry honors the configured occupancies and path") {
    const std::string cfg = write_config("asym_full", R"({
        "model": {"kappa_m": 1e-4, "kappa_r": 0.02, "g0_bar": 3.1623e-5},
        "asymmetry": {"n_list": [0.5], "path": "full"}
    })");
    const fs::path out = scratch("asym_full.csv");
    REQUIRE(run_cli({"--config", cfg, "asymmetry", "--output", out.string()}) == 0);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.rows[0][0] == 0.5);
    CHECK(csv.rows[0][4] * 0.5 == doctest::Approx(1.0).epsilon(0.05));
    // Full-path spectra land in units of the imprecision floor.
    CHECK(csv.rows[0][3] == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("force subcommand sweeps damping when asked") {
    const fs::path out = scratch("force.csv");
    REQUIRE(run_cli({"force", "--output", out.string()}) == 0);
    const Csv plain = parse_csv(slurp(out));
    CHECK(plain.header[0] == "omega");
    CHECK(plain.rows.size() == 501);

    const std::string cfg = write_config("force_sweep", R"({
        "force": {"kappa_m_list": [1e-3, 1e-2]},
        "grid": {"omega_min": 0.99, "omega_max": 1.01, "n_points": 21}
    })");
    REQUIRE(run_cli({"--config", cfg, "force", "--output", out.string()}) == 0);
    const Csv sweep = parse_csv(slurp(out));
    CHECK(sweep.header[0] == "kappa_m");
    REQUIRE(sweep.rows.size() == 42);
    CHECK(sweep.rows[0][0] == 1e-3);
    CHECK(sweep.rows.back()[0] == 1e-2);
}

TEST_CASE("scattering subcommand pins the filter and reports a vanishing residual") {
    const fs::path out = scratch("scatter.csv");
    REQUIRE(run_cli({"scattering", "--output", out.string()}) == 0);
    const Csv csv = parse_csv(slurp(out));
    REQUIRE(csv.header.size() == 5);
    for (const auto& row : csv.rows) CHECK(std::abs(row[4]) <= 1e-9);
    CHECK(run_cli({"--config",
                   write_config("scatter_off", R"({"model": {"detuning": 0.7}})"),
                   "scattering"}) == 1);
}

TEST_CASE("invariant checks pass, and the debug sign flip makes them fail") {
    CHECK(run_cli({"check"}) == 0);
    CHECK(run_cli({"check", "--debug-flip-szf-sign"}) == 2);
}

TEST_CASE("oracle runs reproduce bit for bit under one seed") {
    const fs::path a = scratch("psd_a.csv"), b = scratch("psd_b.csv"), c = scratch("psd_c.csv");
    REQUIRE(run_cli({"oracle", "--seed", "42", "--psd-out", a.string()}) == 0);
    REQUIRE(run_cli({"oracle", "--seed", "42", "--psd-out", b.string()}) == 0);
    REQUIRE(run_cli({"oracle", "--seed", "43", "--psd-out", c.string()}) == 0);
    const std::string sa = slurp(a), sb = slurp(b), sc = slurp(c);
    REQUIRE(!sa.empty());
    CHECK(sa == sb);
    CHECK(sa != sc);
    const Csv csv = parse_csv(sa);
    CHECK(csv.header == std::vector<std::string>{"omega", "psd", "stderr"});
    CHECK(csv.rows.size() == 16385);
}

TEST_CASE("the installed binary behaves like the library entry point") {
    if (!fs::exists("omspec")) return;  // only meaningful next to the build
    CHECK(std::system("./omspec check > /dev/null 2>&1") == 0);
    const int flipped = std::system("./omspec check --debug-flip-szf-sign > /dev/null 2>&1");
    CHECK(WIFEXITED(flipped));
    CHECK(WEXITSTATUS(flipped) == 2);
    CHECK(std::system("./omspec spectrum --output /dev/null 2> /dev/null") == 0);
}
