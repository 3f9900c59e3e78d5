#include "momentopt/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include <CLI11.hpp>

#include "momentopt/cli/io.hpp"
#include "momentopt/energetics.hpp"
#include "momentopt/errors.hpp"
#include "momentopt/oracle.hpp"
#include "momentopt/radial_solver.hpp"

namespace momentopt::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kSecondVariationSamples = 100;

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::BadConfig, "cannot create output directory '" + dir + "'");
}

std::string indexed(const char* stem, std::size_t k, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%02zu.%s", stem, k, ext);
    return buf;
}

Check upper_check(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, true, value <= threshold};
}

Check lower_check(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, false, value >= threshold};
}

Json checks_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const Check& c : checks) {
        Json j;
        j["name"] = c.name;
        j["value"] = number_or_null(c.value);
        j["threshold"] = c.threshold;
        j["bound"] = c.upper ? "max" : "min";
        j["pass"] = c.pass;
        arr.push_back(j);
    }
    return arr;
}

// report.json next to density.csv, report_07.json next to density_07.csv.
std::optional<std::string> sibling_report(const std::string& profile_path) {
    const fs::path p(profile_path);
    const std::string stem = p.stem().string();
    std::string name;
    if (stem == "density") {
        name = "report.json";
    } else if (stem.rfind("density_", 0) == 0) {
        name = "report_" + stem.substr(8) + ".json";
    } else {
        return std::nullopt;
    }
    const fs::path candidate = p.parent_path() / name;
    if (!fs::exists(candidate)) return std::nullopt;
    return candidate.string();
}

struct SolvedEntry {
    SolutionProfile profile;
    EnergyReport report;
};

SolvedEntry solve_one(const RunConfig& config, double epsilon) {
    const ProblemSpec spec = config.spec_at(epsilon);
    SolvedEntry e;
    e.profile = build_density(spec, config.solver_options());
    e.report = duality_report(e.profile, spec);
    return e;
}

void emit_error(std::ostream& err, std::string_view kind, const std::string& message, int code) {
    Json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = code;
    err << j.dump() << "\n";
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::InsufficientOuterRadius:
    case ErrorKind::FluxExceedsBound:
        return kExitInfeasible;
    case ErrorKind::NoRoot:
        return kExitNoRoot;
    case ErrorKind::BadConfig:
    case ErrorKind::MalformedInput:
    case ErrorKind::DomainError:
        return kExitBadConfig;
    }
    return kExitBadConfig;
}

VerifyReport verify_profile(const SolutionProfile& profile, const ProblemSpec& spec,
                            const RunConfig& config) {
    VerifyReport rep;
    rep.energies = duality_report(profile, spec);
    const ConstraintResiduals c = constraint_report(profile, spec);
    const EnergyReport& e = rep.energies;

    const DaeParams dae = DaeParams::make(spec.alpha, spec.epsilon);
    const double lambda_min = std::exp(dae.t_min());
    double lambda_excess = 0.0;
    for (double l : profile.lambda) {
        lambda_excess = std::max({lambda_excess, l - 1.0, lambda_min * (1.0 - 1e-12) - l});
    }

    double sv_primal = INFINITY;
    double sv_dual = -INFINITY;
    for (int k = 0; k < kSecondVariationSamples; ++k) {
        const TestFunction f =
            TestFunction::random(profile.p_star, spec.r_outer, config.seed + static_cast<std::uint64_t>(k));
        sv_primal = std::min(sv_primal, second_variation_primal(profile, f, spec));
        sv_dual = std::max(sv_dual, second_variation_dual(profile, f, spec));
    }
    const double xi_gap = std::abs(e.primal_energy_support - e.xi_energy) /
                          std::max(std::abs(e.primal_energy_support), 1e-300);

    rep.checks = {
        upper_check("boundary", c.boundary, 1e-8),
        lower_check("min_u", c.min_u, -1e-12),
        upper_check("normalization", c.normalization, 1e-6),
        upper_check("gradient_excess", c.gradient_excess, 1e-12),
        upper_check("lambda_range", lambda_excess, 1e-12),
        upper_check("el", e.residual_el, 1e-6),
        upper_check("constitutive", e.residual_constitutive, 1e-10),
        upper_check("xi_identity", xi_gap, 1e-12),
        upper_check("duality_gap", e.duality_gap_rel, config.tolerances.gap),
        lower_check("second_variation_primal_min", sv_primal, -1e-10),
        upper_check("second_variation_dual_max", sv_dual, 1e-10),
    };
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const Check& ch) { return ch.pass; });
    return rep;
}

int cmd_solve(const RunConfig& config, double epsilon, const std::string& out_dir) {
    const SolvedEntry e = solve_one(config, epsilon);
    ensure_dir(out_dir);
    write_density_csv(join(out_dir, "density.csv"), e.profile);
    write_json(join(out_dir, "report.json"), report_json(e.report));
    return kExitOk;
}

int cmd_ladder(const RunConfig& config, const std::string& out_dir) {
    ensure_dir(out_dir);
    std::vector<SolutionProfile> profiles;
    for (std::size_t k = 0; k < config.epsilon_ladder.size(); ++k) {
        SolvedEntry e = solve_one(config, config.epsilon_ladder[k]);
        write_density_csv(join(out_dir, indexed("density", k, "csv")), e.profile);
        write_json(join(out_dir, indexed("report", k, "json")), report_json(e.report));
        profiles.push_back(std::move(e.profile));
    }
    const ProblemSpec spec = config.spec_at(config.epsilon_ladder.back());
    const TentProfile tent = tent_limit(spec);
    const OracleResult lp = lp_maximize(spec, config.lp_grid_points);
    const ComparisonReport cmp = compare(profiles, tent, lp, spec);

    Json doc;
    doc["epsilon_ladder"] = config.epsilon_ladder;
    Json entries = Json::array();
    Json distances = Json::array();
    Json gaps = Json::array();
    Json moments = Json::array();
    for (std::size_t k = 0; k < cmp.entries.size(); ++k) {
        const LadderEntry& le = cmp.entries[k];
        Json j;
        j["epsilon"] = le.epsilon;
        j["profile"] = indexed("density", k, "csv");
        j["p_star"] = le.p_star;
        j["c_const"] = le.c_const;
        j["moment"] = le.moment;
        j["max_density"] = le.height;
        j["tent_distance"] = le.tent_distance;
        j["midpoint_gap"] = le.midpoint_gap;
        j["tent_apex_gap"] = le.tent_apex_gap;
        entries.push_back(j);
        distances.push_back(le.tent_distance);
        gaps.push_back(le.midpoint_gap);
        moments.push_back(le.moment);
    }
    doc["entries"] = entries;
    doc["distances"] = distances;
    doc["midpoint_gaps"] = gaps;
    doc["moments"] = moments;
    Json t;
    t["a"] = tent.a;
    t["apex"] = tent.m;
    t["height"] = tent.h;
    t["moment"] = cmp.tent_moment;
    doc["tent"] = t;
    Json l;
    l["status"] = cmp.lp_optimal ? "Optimal" : "Infeasible";
    l["grid_points"] = config.lp_grid_points;
    l["moment"] = cmp.lp_moment;
    doc["lp"] = l;
    doc["final_moment_vs_lp_rel"] = cmp.final_lp_rel_diff;
    doc["tent_moment_vs_lp_rel"] = cmp.tent_lp_rel_diff;
    doc["distances_decreasing"] = cmp.distances_decreasing;
    doc["midpoint_gaps_decreasing"] = cmp.midpoint_gaps_decreasing;
    doc["tent_apex_gaps_decreasing"] = cmp.tent_apex_gaps_decreasing;
    write_json(join(out_dir, "ladder.json"), doc);
    return kExitOk;
}

int cmd_verify(const RunConfig& config, const std::string& profile_path,
               const std::string& out_dir, std::optional<double> epsilon,
               std::vector<std::string>* failing_names) {
    DensityTable table = read_density_csv(profile_path);
    double c_const = NAN;
    if (const auto report_path = sibling_report(profile_path)) {
        Json rep;
        try {
            rep = Json::parse(read_text(*report_path));
        } catch (const Json::parse_error& ex) {
            throw Error(ErrorKind::MalformedInput, "report '" + *report_path + "': " + ex.what());
        }
        if (!epsilon && rep.contains("epsilon") && rep["epsilon"].is_number()) {
            epsilon = rep["epsilon"].get<double>();
        }
        if (rep.contains("c_const") && rep["c_const"].is_number()) {
            c_const = rep["c_const"].get<double>();
        }
    }
    if (!epsilon && config.epsilon_ladder.size() == 1) epsilon = config.epsilon_ladder.front();
    if (!epsilon) {
        throw Error(ErrorKind::BadConfig,
                    "verify: epsilon unknown; pass --epsilon or keep the profile's report next to it");
    }
    const ProblemSpec spec = config.spec_at(*epsilon);
    if (std::abs(table.r.back() - spec.r_outer) > 1e-12 * spec.r_outer) {
        throw Error(ErrorKind::MalformedInput,
                    "density csv: last radius does not equal r_outer (truncated file?)");
    }
    if (!(table.r.front() > spec.r_inner)) {
        throw Error(ErrorKind::MalformedInput, "density csv: support starts at or below r_inner");
    }
    const SolutionProfile profile = profile_from_table(std::move(table), *epsilon, c_const);
    const VerifyReport rep = verify_profile(profile, spec, config);

    Json doc;
    doc["profile"] = fs::path(profile_path).filename().string();
    doc["epsilon"] = *epsilon;
    doc["pass"] = rep.pass;
    Json failing = Json::array();
    for (const Check& c : rep.checks) {
        if (!c.pass) {
            failing.push_back(c.name);
            if (failing_names) failing_names->push_back(c.name);
        }
    }
    doc["failing"] = failing;
    doc["checks"] = checks_json(rep.checks);
    doc["report"] = report_json(rep.energies);
    ensure_dir(out_dir);
    write_json(join(out_dir, "verify.json"), doc);
    return rep.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_oracle(const RunConfig& config, const std::string& out_dir) {
    // alpha = 0 is allowed here: it is the degenerate infeasible instance.
    const ProblemSpec& spec = config.spec;
    const OracleResult lp = lp_maximize(spec, config.lp_grid_points);
    ensure_dir(out_dir);
    Json doc;
    doc["status"] = lp.status == OracleStatus::Optimal ? "Optimal" : "Infeasible";
    doc["grid_points"] = config.lp_grid_points;
    doc["max_feasible_mass"] = max_feasible_mass(spec);
    doc["moment_opt"] = lp.moment_opt;
    doc["pivots"] = lp.pivots;
    write_json(join(out_dir, "oracle.json"), doc);
    if (lp.status != OracleStatus::Optimal) {
        throw Error(ErrorKind::Infeasible,
                    "oracle: the unit-mass constraint cannot be met under the slope bound");
    }
    write_oracle_csv(join(out_dir, "oracle_density.csv"), lp);
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moment-maximizing radial densities under a slope bound"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    std::string profile_path;
    double epsilon = 0.0;
    std::optional<double> verify_epsilon;
    bool serial = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (default: config output_dir)");
        sub->add_flag("--serial", serial, "use the serial slope kernel");
    };
    CLI::App* solve = app.add_subcommand("solve", "solve for one epsilon");
    add_common(solve);
    solve->add_option("--epsilon", epsilon, "regularization parameter")->required();
    CLI::App* ladder = app.add_subcommand("ladder", "solve the epsilon ladder and compare with the oracles");
    add_common(ladder);
    CLI::App* verify = app.add_subcommand("verify", "recompute all checks on a stored profile");
    add_common(verify);
    verify->add_option("--profile", profile_path, "density CSV")->required();
    verify->add_option("--epsilon", verify_epsilon,
                       "epsilon of the profile (default: taken from its report)");
    CLI::App* oracle = app.add_subcommand("oracle", "solve the discretized linear program");
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "BadConfig", e.what(), kExitBadConfig);
        return kExitBadConfig;
    }

    try {
        RunConfig config = load_config(config_path);
        if (serial) config.parallel = false;
        const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
        int code = kExitOk;
        if (solve->parsed()) {
            if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
                throw Error(ErrorKind::BadConfig, "epsilon: must be positive (epsilon <= 0)");
            }
            code = cmd_solve(config, epsilon, dir);
        } else if (ladder->parsed()) {
            code = cmd_ladder(config, dir);
        } else if (verify->parsed()) {
            std::vector<std::string> failing;
            code = cmd_verify(config, profile_path, dir, verify_epsilon, &failing);
            if (code == kExitVerifyFailed) {
                std::string names;
                for (const std::string& f : failing) names += (names.empty() ? "" : ", ") + f;
                emit_error(err, "VerificationFailed", "failing checks: " + names, code);
            }
        } else if (oracle->parsed()) {
            code = cmd_oracle(config, dir);
        }
        return code;
    } catch (const Error& e) {
        const int code = exit_code_for(e.kind());
        emit_error(err, to_string(e.kind()), e.what(), code);
        return code;
    } catch (const std::exception& e) {
        emit_error(err, "BadConfig", e.what(), kExitBadConfig);
        return kExitBadConfig;
    }
}

}  // namespace momentopt::cli
