#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "momentopt/grid.hpp"

namespace momentopt {

/// Payoff g(r) = r^p.
struct PowerPayoff {
    double p = 2.0;
};

/// Positive, nondecreasing, convex payoff of the radius, known by name.
struct CustomPayoff {
    std::string name;
    std::function<double(double)> g;
};

using PayoffFunction = std::variant<PowerPayoff, CustomPayoff>;

double evaluate_payoff(const PayoffFunction& payoff, double r);

/// Looks up one of the built-in custom payoffs: "linear" (r), "affine" (1 + r),
/// "exp" (e^r), "cosh" (cosh r). Throws BadConfig for unknown names.
CustomPayoff named_payoff(std::string_view name);

/// Annulus R2 < |y| < R1 in R^n, payoff, Lipschitz bound and regularization.
struct ProblemSpec {
    int n = 2;
    PayoffFunction payoff = PowerPayoff{2.0};
    double alpha = 1.0;
    double r_outer = 6.0;
    double r_inner = 1.0;
    double epsilon = 0.1;
};

/// Returns the argument unchanged or throws Error(BadConfig) naming the field.
ProblemSpec validate_spec(ProblemSpec raw);

ProblemSpec with_epsilon(ProblemSpec spec, double epsilon);

/// Surface measure of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double sphere_surface_area(int n);

/// Lebesgue measure of {r_in < |y| < r_out} in R^n.
double annulus_volume(int n, double r_in, double r_out);

/// x^k for small nonnegative integer k by repeated multiplication.
double ipow(double x, int k);

/// Sampled density of the regularized problem together with its dual fields.
/// All per-node arrays are aligned with grid.nodes().
struct SolutionProfile {
    double epsilon = 0.0;
    double c_const = 0.0;
    double p_star = 0.0;
    RadialGrid grid;
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> lambda;
    std::vector<double> theta;
    // ln(lambda); kept separately because lambda underflows for small epsilon.
    std::vector<double> xi;
};

/// Limit density alpha * min(r - a, R1 - r) on [a, R1].
struct TentProfile {
    double a = 0.0;
    double m = 0.0;
    double h = 0.0;
    double slope = 0.0;
    double r_outer = 0.0;

    double operator()(double r) const;
};

struct EnergyReport {
    double epsilon = 0.0;
    double c_const = 0.0;
    double p_star = 0.0;
    double primal_energy_support = 0.0;
    double primal_energy_full = 0.0;
    double xi_energy = 0.0;
    double dual_energy = 0.0;
    double duality_gap_rel = 0.0;
    double moment = 0.0;
    double residual_el = 0.0;
    double residual_constitutive = 0.0;
    double residual_normalization = 0.0;
    double residual_boundary = 0.0;
    double residual_gradient_excess = 0.0;
};

enum class OracleStatus { Optimal, Infeasible };

struct OracleResult {
    RadialGrid grid;
    std::vector<double> u_opt;
    double moment_opt = 0.0;
    OracleStatus status = OracleStatus::Infeasible;
    std::size_t pivots = 0;
};

}  // namespace momentopt
