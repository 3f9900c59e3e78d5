#pragma once

#include <cstddef>
#include <vector>

namespace momentopt {

enum class RowSense { LessEqual, GreaterEqual, Equal };

/// maximize c^T x subject to rows (a_i^T x <sense> b_i) and x >= 0.
/// Dense storage; meant for a few hundred variables.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<RowSense> senses;
    std::vector<double> rhs;

    void add_row(std::vector<double> coeffs, RowSense sense, double b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    std::size_t pivots = 0;
};

/// Two-phase tableau simplex. Dantzig pricing, switching to Bland's rule after
/// a run of degenerate pivots so cycling cannot occur.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace momentopt
