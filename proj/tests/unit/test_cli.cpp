#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "momentopt/cli/commands.hpp"
#include "momentopt/cli/config.hpp"
#include "momentopt/cli/io.hpp"
#include "momentopt/errors.hpp"

using namespace momentopt;
using namespace momentopt::cli;
namespace fs = std::filesystem;

namespace {

std::string scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("momentopt_unit_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string config_text(double alpha, double r_outer, const std::string& ladder,
                        std::size_t lp_cells = 200) {
    return "{\"n\": 2, \"payoff\": {\"kind\": \"power\", \"p\": 2}, \"alpha\": " +
           std::to_string(alpha) + ", \"r_outer\": " + std::to_string(r_outer) +
           ", \"r_inner\": 1, \"epsilon_ladder\": " + ladder +
           ", \"grid_points\": 2048, \"lp_grid_points\": " + std::to_string(lp_cells) + ", \"seed\": 1}";
}

std::string write_config(const std::string& dir, const std::string& text) {
    const std::string path = dir + "/config.json";
    write_text(path, text);
    return path;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "momentopt");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit code mapping is exhaustive and disjoint") {
    CHECK(exit_code_for(ErrorKind::Infeasible) == 2);
    CHECK(exit_code_for(ErrorKind::InsufficientOuterRadius) == 2);
    CHECK(exit_code_for(ErrorKind::FluxExceedsBound) == 2);
    CHECK(exit_code_for(ErrorKind::NoRoot) == 3);
    CHECK(exit_code_for(ErrorKind::BadConfig) == 4);
    CHECK(exit_code_for(ErrorKind::MalformedInput) == 4);
    CHECK(exit_code_for(ErrorKind::DomainError) == 4);
}

TEST_CASE("config parsing") {
    const RunConfig c = parse_config(config_text(10, 6, "[0.5, 0.1]"));
    CHECK(c.spec.alpha == 10.0);
    CHECK(c.epsilon_ladder.size() == 2);
    CHECK(c.grid_points == 2048);
    CHECK(c.solver_options().constant_tol == doctest::Approx(1e-12));
    auto kind = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::DomainError;
    };
    CHECK(kind(config_text(10, 0.5, "[0.5]")) == ErrorKind::BadConfig);
    CHECK(kind(config_text(10, 6, "[0.1, 0.5]")) == ErrorKind::BadConfig);
    CHECK(kind(config_text(10, 6, "[]")) == ErrorKind::BadConfig);
    CHECK(kind("{\"nope\": 1}") == ErrorKind::BadConfig);
    CHECK(kind("not json") == ErrorKind::BadConfig);
    std::string odd = config_text(10, 6, "[0.5]");
    odd.replace(odd.find("2048"), 4, "2047");
    CHECK(kind(odd) == ErrorKind::BadConfig);
    std::string custom = config_text(10, 6, "[0.5]");
    const std::string power = "{\"kind\": \"power\", \"p\": 2}";
    custom.replace(custom.find(power), power.size(), "{\"kind\": \"custom\", \"name\": \"exp\"}");
    CHECK(std::holds_alternative<CustomPayoff>(parse_config(custom).spec.payoff));
}

TEST_CASE("help and argument errors") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 4);
    CHECK(run({"solve", "--config", "x.json"}).code == 4);  // missing --epsilon
    const Run missing = run({"oracle", "--config", "/nonexistent/config.json"});
    CHECK(missing.code == 4);
    CHECK(Json::parse(missing.err)["error"] == "BadConfig");
}

TEST_CASE("solve, verify and reread on the companion instance") {
    const std::string dir = scratch("solve");
    const std::string cfg = write_config(dir, config_text(10, 6, "[0.1]"));
    const Run solved = run({"solve", "--config", cfg, "--epsilon", "0.1", "--out", dir});
    REQUIRE(solved.code == 0);
    const std::string csv = read_text(dir + "/density.csv");
    CHECK(count_lines(csv) == 2050);
    CHECK(csv.rfind("r,u,du_dr,lambda,theta\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);

    const Json report = Json::parse(read_text(dir + "/report.json"));
    const std::vector<std::string> keys{"epsilon", "c_const", "p_star", "moment",
                                        "primal_energy_support", "primal_energy_full",
                                        "xi_energy", "dual_energy", "duality_gap_rel", "residuals"};
    std::vector<std::string> got;
    for (auto it = report.begin(); it != report.end(); ++it) got.push_back(it.key());
    CHECK(got == keys);

    const Run verified = run({"verify", "--config", cfg, "--profile", dir + "/density.csv", "--out", dir});
    CHECK(verified.code == 0);
    const Json v = Json::parse(read_text(dir + "/verify.json"));
    CHECK(v["pass"] == true);
    // Reread residuals agree with the in-memory ones.
    for (const char* k : {"el", "constitutive", "normalization", "boundary", "gradient_excess"}) {
        CAPTURE(k);
        const double a = report["residuals"][k].get<double>();
        const double b = v["report"]["residuals"][k].get<double>();
        CHECK(std::abs(a - b) <= 1e-12);
    }
    CHECK(std::abs(report["duality_gap_rel"].get<double>() -
                   v["report"]["duality_gap_rel"].get<double>()) <= 1e-12);

    // Negative control: scaled density fails the Euler-Lagrange check.
    DensityTable t = parse_density_csv(csv);
    for (double& u : t.u) u *= 1.1;
    write_text(dir + "/scaled.csv", format_density_csv(t));
    const Run scaled = run({"verify", "--config", cfg, "--profile", dir + "/scaled.csv",
                            "--epsilon", "0.1", "--out", dir + "/scaled"});
    CHECK(scaled.code == 1);
    const Json e = Json::parse(scaled.err);
    CHECK(e["error"] == "VerificationFailed");
    CHECK(e["message"].get<std::string>().find("el") != std::string::npos);

    // Truncated file.
    write_text(dir + "/cut.csv", csv.substr(0, csv.size() / 2));
    CHECK(run({"verify", "--config", cfg, "--profile", dir + "/cut.csv", "--epsilon", "0.1",
               "--out", dir + "/cut"}).code == 4);
    CHECK(run({"verify", "--config", cfg, "--profile", dir + "/absent.csv", "--epsilon", "0.1",
               "--out", dir + "/absent"}).code == 4);
}

TEST_CASE("strict csv reader") {
    CHECK_THROWS_AS(parse_density_csv("r,u,du_dr,lambda,theta\n1,0,0,1,0\n"), Error);
    CHECK_THROWS_AS(parse_density_csv("r,u\n1,0\n2,0\n3,0\n"), Error);
    const std::string rows = "1,0,0,1,0\n2,0,0,1,0\n3,0,0,1,0\n";
    CHECK(parse_density_csv(std::string("r,u,du_dr,lambda,theta\n") + rows).r.size() == 3);
    CHECK_THROWS_AS(parse_density_csv(std::string("r,u,du_dr,lambda,theta\r\n") + rows), Error);
    CHECK_THROWS_AS(parse_density_csv("r,u,du_dr,lambda,theta\n1,0,0,1,0\n2,x,0,1,0\n3,0,0,1,0\n"), Error);
    CHECK_THROWS_AS(parse_density_csv("r,u,du_dr,lambda,theta\n1,0,0,1,0\n2,0,0,1\n3,0,0,1,0\n"), Error);
    // 17 significant digits survive a round trip bit for bit.
    DensityTable t;
    t.r = {1.0, 1.0 + 1e-15, 2.0 / 3.0 + 1.0};
    t.u = {1.0 / 3.0, 5e-324, 0.1};
    t.du = t.lambda = t.theta = t.u;
    const DensityTable back = parse_density_csv(format_density_csv(t));
    CHECK(back.r == t.r);
    CHECK(back.u == t.u);
}

TEST_CASE("infeasible and unattainable configurations exit with 2") {
    const std::string dir = scratch("infeasible");
    // Thin annulus.
    const std::string thin = write_config(dir, config_text(1, 1.01, "[0.1]", 50));
    CHECK(run({"solve", "--config", thin, "--epsilon", "0.1", "--out", dir}).code == 2);
    CHECK(run({"oracle", "--config", thin, "--out", dir}).code == 2);
    // Tiny slope bound.
    const std::string tiny = write_config(dir, config_text(1e-6, 6, "[0.1]"));
    CHECK(run({"solve", "--config", tiny, "--epsilon", "0.1", "--out", dir}).code == 2);
    // alpha = 0.
    std::string zero_text = config_text(0, 6, "[0.1]");
    const std::string zero = write_config(dir, zero_text);
    CHECK(run({"oracle", "--config", zero, "--out", dir}).code == 2);
    CHECK(run({"solve", "--config", zero, "--epsilon", "0.1", "--out", dir}).code == 2);
    // R1 < R2.
    const std::string inverted = write_config(dir, config_text(1, 0.5, "[0.1]"));
    CHECK(run({"solve", "--config", inverted, "--epsilon", "0.1", "--out", dir}).code == 4);
    // The stated alpha = 1 geometry cannot carry unit mass under the construction.
    const std::string ref = write_config(dir, config_text(1, 6, "[0.1]"));
    const Run r = run({"solve", "--config", ref, "--epsilon", "0.1", "--out", dir});
    CHECK(r.code == 2);
    CHECK(Json::parse(r.err)["error"] == "InsufficientOuterRadius");
    CHECK(run({"solve", "--config", ref, "--epsilon", "-1", "--out", dir}).code == 4);
}

TEST_CASE("oracle outputs and refinement") {
    const std::string dir = scratch("oracle");
    const std::string cfg100 = write_config(dir, config_text(1, 6, "[0.1]", 100));
    REQUIRE(run({"oracle", "--config", cfg100, "--out", dir + "/n100"}).code == 0);
    const std::string cfg200 = write_config(dir, config_text(1, 6, "[0.1]", 200));
    REQUIRE(run({"oracle", "--config", cfg200, "--out", dir + "/n200"}).code == 0);
    const Json a = Json::parse(read_text(dir + "/n100/oracle.json"));
    const Json b = Json::parse(read_text(dir + "/n200/oracle.json"));
    CHECK(b["status"] == "Optimal");
    CHECK(b["moment_opt"].get<double>() > 0.0);
    const double ma = a["moment_opt"].get<double>();
    const double mb = b["moment_opt"].get<double>();
    CHECK(std::abs(ma - mb) / mb <= 1e-2);
    CHECK(count_lines(read_text(dir + "/n200/oracle_density.csv")) == 202);
}

TEST_CASE("ladder outputs are complete and byte-identical on rerun") {
    const std::string dir = scratch("ladder");
    const std::string cfg = write_config(dir, config_text(10, 6, "[0.5, 0.1, 0.02]"));
    REQUIRE(run({"ladder", "--config", cfg, "--out", dir + "/a"}).code == 0);
    REQUIRE(run({"ladder", "--config", cfg, "--out", dir + "/b", "--serial"}).code == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir + "/a")) {
        const std::string name = entry.path().filename().string();
        CAPTURE(name);
        CHECK(read_text(entry.path().string()) == read_text(dir + "/b/" + name));
        ++files;
    }
    CHECK(fs::exists(dir + "/a/density_00.csv"));
    CHECK(fs::exists(dir + "/a/density_02.csv"));
    CHECK(fs::exists(dir + "/a/ladder.json"));
    CHECK(files == 7);  // 3 densities, 3 reports, ladder.json
    const Json l = Json::parse(read_text(dir + "/a/ladder.json"));
    CHECK(l["distances_decreasing"] == true);
    const Json& d = l["distances"];
    REQUIRE(d.size() == 3);
    CHECK(d[0].get<double>() > d[1].get<double>());
    CHECK(d[1].get<double>() > d[2].get<double>());
    // verify picks epsilon up from the sibling report.
    CHECK(run({"verify", "--config", cfg, "--profile", dir + "/a/density_01.csv", "--out",
               dir + "/v"}).code == 0);
}

}  // TEST_SUITE
