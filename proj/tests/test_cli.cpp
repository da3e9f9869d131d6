#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "geo/distance.hpp"
#include "geo/io.hpp"
#include "geo/shape.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string stderr_text;
};

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("geoinfer_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args, const fs::path& workdir) {
    const fs::path err_file = workdir / "stderr.txt";
    const std::string cmd = "cd " + workdir.string() + " && " + GEO_CLI_PATH + " " + args +
                            " 2> " + err_file.string();
    const int raw = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(err_file);
    std::stringstream ss;
    ss << in.rdbuf();
    res.stderr_text = ss.str();
    return res;
}

void write(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// data rows of a CSV (skipping comments and the header line)
std::vector<std::vector<double>> csv_rows(const fs::path& path) {
    std::istringstream in(slurp(path));
    std::vector<std::vector<double>> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("dist: singleton cloud over three queries") {
    const fs::path dir = fresh_dir("dist_singleton");
    write(dir / "pts.csv", "0.5 0.5\n");
    write(dir / "queries.csv", "0 0\n1 0\n2 2\n");
    write(dir / "cfg.json",
          R"({"shape": {"type": "cloud", "file": "pts.csv"},
              "queries": {"file": "queries.csv"}, "seed": 1, "out": "run"})");
    const CliResult res = run_cli("dist --config cfg.json", dir);
    CHECK(res.exit_code == 0);
    const auto rows = csv_rows(dir / "run" / "dist.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][2] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("dist: malformed input row names the line") {
    const fs::path dir = fresh_dir("dist_malformed");
    write(dir / "pts.csv", "1,2,x\n");
    write(dir / "cfg.json",
          R"({"shape": {"type": "cloud", "file": "pts.csv"},
              "queries": {"grid": {"min": [0,0], "max": [1,1], "counts": [2,2]}}})");
    const CliResult res = run_cli("dist --config cfg.json", dir);
    CHECK(res.exit_code == 2);
    CHECK(res.stderr_text.find("line 1: invalid number") != std::string::npos);
}

TEST_CASE("dist: output re-reads bit-exactly") {
    const fs::path dir = fresh_dir("dist_roundtrip");
    write(dir / "cfg.json",
          R"({"shape": {"type": "cloud", "points": [[-1.0, 0.0], [1.0, 0.0], [0.3, 0.7]]},
              "queries": {"grid": {"min": [-1.3, -1.3], "max": [1.3, 1.3], "counts": [5, 5]}},
              "seed": 11, "out": "run"})");
    const CliResult res = run_cli("dist --config cfg.json", dir);
    REQUIRE(res.exit_code == 0);

    const geo::CompactShape shape = geo::CompactShape::cloud(
        {geo::Point{-1.0, 0.0}, geo::Point{1.0, 0.0}, geo::Point{0.3, 0.7}});
    const auto rows = csv_rows(dir / "run" / "dist.csv");
    REQUIRE(rows.size() == 25);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 4);
        const geo::Point x{row[0], row[1]};
        const double d = geo::distance(shape, x);
        CHECK(row[2] == d);  // bitwise round trip through %.17g
        if (d > 0.0) CHECK(row[3] == geo::gradient(shape, x).mu);
    }
}

TEST_CASE("unknown config keys are rejected") {
    const fs::path dir = fresh_dir("unknown_key");
    write(dir / "cfg.json",
          R"({"shape": {"type": "two_point", "dim": 2}, "mu": 0.5, "eps": 0.1,
              "rays": 100, "typo_key": 1})");
    const CliResult res = run_cli("medial --config cfg.json", dir);
    CHECK(res.exit_code == 2);
    CHECK(res.stderr_text.find("typo_key") != std::string::npos);
}

TEST_CASE("module errors surface verbatim with exit 1") {
    const fs::path dir = fresh_dir("beyond_reach");
    // two-point cloud has reach 1; request radii beyond it
    write(dir / "cfg.json",
          R"({"shape": {"type": "two_point", "dim": 2},
              "r_grid": [0.3, 0.5, 0.7, 0.9, 1.5], "samples": 1000})");
    const CliResult res = run_cli("curvature --config cfg.json", dir);
    CHECK(res.exit_code == 1);
    CHECK(res.stderr_text.find("tube formula invalid beyond reach") != std::string::npos);

    // criticality filter above 1 is infeasible
    write(dir / "mu.json",
          R"({"shape": {"type": "two_point", "dim": 2}, "mu": 1.5, "eps": 0.1, "rays": 100})");
    const CliResult mu_res = run_cli("medial --config mu.json", dir);
    CHECK(mu_res.exit_code == 1);
    CHECK(mu_res.stderr_text.find("mu_max must lie in (0, 1)") != std::string::npos);
}

TEST_CASE("same config and seed produce byte-identical reports") {
    const fs::path dir = fresh_dir("determinism");
    write(dir / "cfg.json",
          R"({"shape": {"type": "two_point", "dim": 2}, "mu": 0.6, "eps": 0.5,
              "rays": 4000, "seed": 42, "out": "run"})");
    REQUIRE(run_cli("medial --config cfg.json", dir).exit_code == 0);
    const std::string csv_a = slurp(dir / "run" / "medial_points.csv");
    const std::string json_a = slurp(dir / "run" / "medial_report.json");
    REQUIRE(run_cli("medial --config cfg.json", dir).exit_code == 0);
    CHECK(slurp(dir / "run" / "medial_points.csv") == csv_a);
    CHECK(slurp(dir / "run" / "medial_report.json") == json_a);
}

TEST_CASE("results are independent of the worker count") {
    const fs::path dir = fresh_dir("workers");
    write(dir / "cfg.json",
          R"({"shape": {"type": "two_point", "dim": 2}, "mu": 0.6, "eps": 0.5,
              "rays": 6000, "seed": 5, "out": "run"})");
    REQUIRE(run_cli("medial --config cfg.json --workers 1", dir).exit_code == 0);
    const std::string serial = slurp(dir / "run" / "medial_points.csv");
    REQUIRE(run_cli("medial --config cfg.json --workers 4", dir).exit_code == 0);
    const std::string parallel = slurp(dir / "run" / "medial_points.csv");
    // worker flag changes the config echo, so compare data lines only
    const auto strip_config = [](const std::string& text) {
        std::istringstream in(text);
        std::string line, out;
        while (std::getline(in, line))
            if (line.rfind("# config=", 0) != 0) out += line + "\n";
        return out;
    };
    CHECK(strip_config(serial) == strip_config(parallel));
}

TEST_CASE("covering command reproduces the two-point segment scaling") {
    const fs::path dir = fresh_dir("cov_two_point");
    write(dir / "cfg.json",
          R"({"shape": {"type": "two_point", "dim": 2}, "mu": 0.6, "eps": 0.5,
              "eta_list": [0.2, 0.1, 0.05, 0.02], "rays": 60000, "seed": 12, "out": "run"})");
    REQUIRE(run_cli("covering --config cfg.json", dir).exit_code == 0);
    const std::string report = slurp(dir / "run" / "covering_report.json");
    // the filtered medial set is a segment: slope near 1
    const auto pos = report.find("\"slope\": ");
    REQUIRE(pos != std::string::npos);
    const double slope = std::strtod(report.c_str() + pos + 9, nullptr);
    CHECK(slope == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("curvature command reproduces the unit-ball polynomial") {
    const fs::path dir = fresh_dir("curv_ball");
    write(dir / "cfg.json",
          R"({"shape": {"type": "ball", "center": [0, 0, 0], "radius": 1.0},
              "samples": 1000000, "seed": 2024, "out": "run"})");
    REQUIRE(run_cli("curvature --config cfg.json", dir).exit_code == 0);
    const std::string report = slurp(dir / "run" / "curvature.json");
    const auto pos = report.find("\"coefficients\": [");
    REQUIRE(pos != std::string::npos);
    const char* cursor = report.c_str() + pos + 17;
    const double target[4] = {4 * M_PI / 3, 4 * M_PI, 4 * M_PI, 4 * M_PI / 3};
    for (int i = 0; i < 4; ++i) {
        char* end = nullptr;
        const double c = std::strtod(cursor, &end);
        CHECK(c == doctest::Approx(target[i]).epsilon(0.02));
        cursor = end + 1;
    }
}

TEST_CASE("flag overrides beat config values") {
    const fs::path dir = fresh_dir("flag_override");
    write(dir / "cfg.json",
          R"({"shape": {"type": "two_point", "dim": 2}, "mu": 0.6, "eps": 0.5,
              "rays": 1000, "seed": 1, "out": "run"})");
    REQUIRE(run_cli("medial --config cfg.json --seed 2", dir).exit_code == 0);
    const std::string report = slurp(dir / "run" / "medial_report.json");
    CHECK(report.find("\"seed\": 2") != std::string::npos);
    // reports carry everything needed to re-run
    CHECK(report.find("\"version\"") != std::string::npos);
    CHECK(report.find("\"config\"") != std::string::npos);
}
