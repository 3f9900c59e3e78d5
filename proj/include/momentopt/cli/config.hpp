#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "momentopt/model.hpp"
#include "momentopt/radial_solver.hpp"

namespace momentopt::cli {

struct Tolerances {
    // Support-radius bracket width relative to R1 - R2 (the constant's is 100x tighter).
    double root = 1e-10;
    // Relative N/2-vs-N moment change that triggers grid refinement.
    double quadrature = 1e-8;
    // Relative duality gap accepted by verify.
    double gap = 1e-5;
};

/// One JSON document, e.g.
///   {"n": 2, "payoff": {"kind": "power", "p": 2}, "alpha": 1, "r_outer": 6,
///    "r_inner": 1, "epsilon_ladder": [0.5, 0.1], "grid_points": 2048,
///    "lp_grid_points": 200, "tolerances": {"root": 1e-10, "quadrature": 1e-8,
///    "gap": 1e-5}, "output_dir": "out", "seed": 1}
/// grid_points and lp_grid_points count cells, so a profile has grid_points + 1 rows.
struct RunConfig {
    ProblemSpec spec;  // epsilon holds the first ladder entry
    std::vector<double> epsilon_ladder;
    std::size_t grid_points = 2048;
    std::size_t lp_grid_points = 200;
    Tolerances tolerances;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    bool parallel = true;

    SolverOptions solver_options() const;
    ProblemSpec spec_at(double epsilon) const;
};

/// Throws Error(BadConfig) on unknown keys, wrong types or violated invariants.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace momentopt::cli
