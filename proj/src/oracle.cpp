#include "momentopt/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "momentopt/energetics.hpp"
#include "momentopt/errors.hpp"
#include "momentopt/radial_solver.hpp"
#include "momentopt/simplex.hpp"

namespace momentopt {

double max_feasible_mass(const ProblemSpec& spec) {
    if (!(spec.alpha > 0.0)) return 0.0;
    return tent_mass(spec.r_inner, spec.alpha, spec);
}

OracleResult lp_maximize(const ProblemSpec& spec, const RadialGrid& grid) {
    if (grid.cells() < 2) throw Error(ErrorKind::BadConfig, "oracle: need at least 2 cells");
    OracleResult out;
    out.grid = grid;
    out.u_opt.assign(grid.size(), 0.0);
    out.status = OracleStatus::Infeasible;
    if (max_feasible_mass(spec) < 1.0) return out;

    const std::size_t cells = grid.cells();
    const std::size_t vars = cells - 1;  // u_1 .. u_{N-1}
    const double omega = sphere_surface_area(spec.n);
    const std::vector<double> w = trapezoid_weights(grid);

    LinearProgram lp;
    lp.objective.assign(vars, 0.0);
    std::vector<double> mass_row(vars, 0.0);
    for (std::size_t j = 0; j < vars; ++j) {
        const double r = grid[j + 1];
        const double weight = omega * w[j + 1] * ipow(r, spec.n - 1);
        mass_row[j] = weight;
        lp.objective[j] = weight * evaluate_payoff(spec.payoff, r);
    }
    for (std::size_t i = 0; i < cells; ++i) {
        const double bound = spec.alpha * (grid[i + 1] - grid[i]);
        // Coefficients of u_{i+1} - u_i with the fixed zero end values dropped.
        std::vector<double> up(vars, 0.0);
        if (i + 1 <= vars) up[i] = 1.0;
        if (i >= 1) up[i - 1] = -1.0;
        std::vector<double> down = up;
        for (double& v : down) v = -v;
        lp.add_row(std::move(up), RowSense::LessEqual, bound);
        lp.add_row(std::move(down), RowSense::LessEqual, bound);
    }
    lp.add_row(std::move(mass_row), RowSense::Equal, 1.0);

    const LpSolution sol = solve_lp(lp);
    out.pivots = sol.pivots;
    if (sol.status != LpStatus::Optimal) return out;
    out.status = OracleStatus::Optimal;
    for (std::size_t j = 0; j < vars; ++j) out.u_opt[j + 1] = std::max(0.0, sol.x[j]);
    out.moment_opt = moment(out, spec);
    return out;
}

OracleResult lp_maximize(const ProblemSpec& spec, std::size_t cells) {
    return lp_maximize(spec, RadialGrid::uniform(spec.r_inner, spec.r_outer, cells));
}

namespace {

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] < v[i - 1])) return false;
    }
    return true;
}

}  // namespace

ComparisonReport compare(const std::vector<SolutionProfile>& ladder, const TentProfile& tent,
                         const OracleResult& lp, const ProblemSpec& spec) {
    ComparisonReport rep;
    rep.tent_a = tent.a;
    rep.tent_h = tent.h;
    rep.tent_moment = moment(tent, spec);
    rep.lp_optimal = lp.status == OracleStatus::Optimal;
    rep.lp_moment = lp.moment_opt;
    const double g_tent_apex = payoff_antiderivative(tent.m, spec);
    std::vector<double> distances, midpoint_gaps, apex_gaps;
    for (const SolutionProfile& prof : ladder) {
        LadderEntry e;
        e.epsilon = prof.epsilon;
        e.p_star = prof.p_star;
        e.c_const = prof.c_const;
        e.moment = moment(prof, with_epsilon(spec, prof.epsilon));
        // The tent is monotone on [R2, p*], so the nodes cover its whole span.
        for (std::size_t i = 0; i < prof.grid.size(); ++i) {
            e.tent_distance = std::max(e.tent_distance, std::abs(prof.u[i] - tent(prof.grid[i])));
            e.height = std::max(e.height, prof.u[i]);
        }
        const double mid = 0.5 * (prof.p_star + spec.r_outer);
        e.midpoint_gap = std::abs(prof.c_const - payoff_antiderivative(mid, spec));
        e.tent_apex_gap = std::abs(prof.c_const - g_tent_apex);
        distances.push_back(e.tent_distance);
        midpoint_gaps.push_back(e.midpoint_gap);
        apex_gaps.push_back(e.tent_apex_gap);
        rep.entries.push_back(e);
    }
    rep.distances_decreasing = strictly_decreasing(distances);
    rep.midpoint_gaps_decreasing = strictly_decreasing(midpoint_gaps);
    rep.tent_apex_gaps_decreasing = strictly_decreasing(apex_gaps);
    if (rep.lp_optimal && rep.lp_moment != 0.0) {
        if (!rep.entries.empty()) {
            rep.final_lp_rel_diff =
                std::abs(rep.entries.back().moment - rep.lp_moment) / std::abs(rep.lp_moment);
        }
        rep.tent_lp_rel_diff = std::abs(rep.tent_moment - rep.lp_moment) / std::abs(rep.lp_moment);
    }
    return rep;
}

}  // namespace momentopt
