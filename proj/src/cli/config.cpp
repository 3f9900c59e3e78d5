#include "momentopt/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "momentopt/errors.hpp"

namespace momentopt::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::BadConfig, what); }

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) bad(where + ": unknown key '" + key + "'");
    }
}

double number(const json& obj, const std::string& key) {
    if (!obj.contains(key)) bad("config: missing '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) bad("config: '" + key + "' must be a number");
    return v.get<double>();
}

std::size_t count(const json& obj, const std::string& key, std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        bad("config: '" + key + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

PayoffFunction parse_payoff(const json& v) {
    if (!v.is_object() || !v.contains("kind") || !v.at("kind").is_string()) {
        bad("payoff: expected {\"kind\": \"power\", \"p\": ...} or {\"kind\": \"custom\", \"name\": ...}");
    }
    const std::string kind = v.at("kind").get<std::string>();
    if (kind == "power") {
        reject_unknown(v, {"kind", "p"}, "payoff");
        return PowerPayoff{number(v, "p")};
    }
    if (kind == "custom") {
        reject_unknown(v, {"kind", "name"}, "payoff");
        if (!v.contains("name") || !v.at("name").is_string()) bad("payoff: custom needs a name");
        return named_payoff(v.at("name").get<std::string>());
    }
    bad("payoff: unknown kind '" + kind + "'");
}

}  // namespace

SolverOptions RunConfig::solver_options() const {
    SolverOptions o;
    o.cells = grid_points;
    o.support_tol = tolerances.root;
    o.constant_tol = tolerances.root / 100.0;
    o.refinement_tol = tolerances.quadrature;
    o.parallel = parallel;
    return o;
}

ProblemSpec RunConfig::spec_at(double epsilon) const {
    if (spec.alpha == 0.0) {
        throw Error(ErrorKind::Infeasible, "alpha = 0 admits only the zero density, which has no mass");
    }
    return validate_spec(with_epsilon(spec, epsilon));
}

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("config: not valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) bad("config: top level must be an object");
    reject_unknown(doc,
                   {"n", "payoff", "alpha", "r_outer", "r_inner", "epsilon_ladder", "grid_points",
                    "lp_grid_points", "tolerances", "output_dir", "seed", "parallel"},
                   "config");

    RunConfig cfg;
    if (!doc.contains("n") || !doc.at("n").is_number_integer()) bad("n: must be an integer");
    cfg.spec.n = doc.at("n").get<int>();
    if (!doc.contains("payoff")) bad("config: missing 'payoff'");
    cfg.spec.payoff = parse_payoff(doc.at("payoff"));
    cfg.spec.alpha = number(doc, "alpha");
    cfg.spec.r_outer = number(doc, "r_outer");
    cfg.spec.r_inner = number(doc, "r_inner");

    if (!doc.contains("epsilon_ladder") || !doc.at("epsilon_ladder").is_array() ||
        doc.at("epsilon_ladder").empty()) {
        bad("epsilon_ladder: must be a nonempty array");
    }
    for (const json& e : doc.at("epsilon_ladder")) {
        if (!e.is_number()) bad("epsilon_ladder: entries must be numbers");
        const double eps = e.get<double>();
        if (!(eps > 0.0) || !std::isfinite(eps)) bad("epsilon_ladder: entries must be positive");
        if (!cfg.epsilon_ladder.empty() && !(eps < cfg.epsilon_ladder.back())) {
            bad("epsilon_ladder: must be strictly decreasing");
        }
        cfg.epsilon_ladder.push_back(eps);
    }
    cfg.spec.epsilon = cfg.epsilon_ladder.front();

    cfg.grid_points = count(doc, "grid_points", cfg.grid_points);
    if (cfg.grid_points % 2 != 0 || cfg.grid_points < 4) {
        bad("grid_points: must be even and at least 4");
    }
    cfg.lp_grid_points = count(doc, "lp_grid_points", cfg.lp_grid_points);
    if (cfg.lp_grid_points < 2) bad("lp_grid_points: must be at least 2");

    if (doc.contains("tolerances")) {
        const json& t = doc.at("tolerances");
        if (!t.is_object()) bad("tolerances: must be an object");
        reject_unknown(t, {"root", "quadrature", "gap"}, "tolerances");
        if (t.contains("root")) cfg.tolerances.root = number(t, "root");
        if (t.contains("quadrature")) cfg.tolerances.quadrature = number(t, "quadrature");
        if (t.contains("gap")) cfg.tolerances.gap = number(t, "gap");
        for (double v : {cfg.tolerances.root, cfg.tolerances.quadrature, cfg.tolerances.gap}) {
            if (!(v > 0.0) || !std::isfinite(v)) bad("tolerances: values must be positive");
        }
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) bad("output_dir: must be a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) bad("seed: must be a nonnegative integer");
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("parallel")) {
        if (!doc.at("parallel").is_boolean()) bad("parallel: must be a boolean");
        cfg.parallel = doc.at("parallel").get<bool>();
    }
    // alpha = 0 is well formed but admits only the zero density; commands
    // report it as infeasible rather than as a configuration error.
    if (cfg.spec.alpha == 0.0) {
        ProblemSpec probe = cfg.spec;
        probe.alpha = 1.0;
        validate_spec(probe);
    } else {
        cfg.spec = validate_spec(cfg.spec);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace momentopt::cli
