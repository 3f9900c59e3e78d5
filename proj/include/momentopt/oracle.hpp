#pragma once

#include <cstddef>
#include <vector>

#include "momentopt/model.hpp"

namespace momentopt {

/// omega int_{R2}^{R1} r^{n-1} alpha min(r - R2, R1 - r) dr: the mass of the
/// widest admissible tent, i.e. the largest mass any density obeying the
/// boundary and slope constraints can carry. Exact for integer n.
double max_feasible_mass(const ProblemSpec& spec);

/// The discretized problem on `grid` (uniform on [R2, R1]): unknowns
/// u_1..u_{N-1} >= 0 with u_0 = u_N = 0, |u_{i+1} - u_i| <= alpha dr,
/// trapezoid-weighted unit mass, maximal trapezoid-weighted moment.
OracleResult lp_maximize(const ProblemSpec& spec, const RadialGrid& grid);
OracleResult lp_maximize(const ProblemSpec& spec, std::size_t cells = 200);

struct LadderEntry {
    double epsilon = 0.0;
    double p_star = 0.0;
    double c_const = 0.0;
    double moment = 0.0;
    // sup over profile nodes of |u - tent|.
    double tent_distance = 0.0;
    // |C - G((p* + R1) / 2)|: apex offset from the own support midpoint.
    double midpoint_gap = 0.0;
    // |C - G(tent apex)|.
    double tent_apex_gap = 0.0;
    double height = 0.0;
};

struct ComparisonReport {
    std::vector<LadderEntry> entries;
    double tent_a = 0.0;
    double tent_h = 0.0;
    double tent_moment = 0.0;
    bool lp_optimal = false;
    double lp_moment = 0.0;
    // |moment(last profile) - lp_moment| / lp_moment and the tent analogue.
    double final_lp_rel_diff = 0.0;
    double tent_lp_rel_diff = 0.0;
    bool distances_decreasing = false;
    bool midpoint_gaps_decreasing = false;
    bool tent_apex_gaps_decreasing = false;
};

ComparisonReport compare(const std::vector<SolutionProfile>& ladder, const TentProfile& tent,
                         const OracleResult& lp, const ProblemSpec& spec);

}  // namespace momentopt
