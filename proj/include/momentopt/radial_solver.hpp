#pragma once

#include <cstddef>
#include <vector>

#include "momentopt/dae.hpp"
#include "momentopt/grid.hpp"
#include "momentopt/model.hpp"
#include "momentopt/roots.hpp"

namespace momentopt {

struct SolverOptions {
    std::size_t cells = 2048;
    // p* bracket width relative to R1 - R2.
    double support_tol = 1e-10;
    // C bracket width relative to G(R1) - G(a); 100x tighter than support_tol.
    double constant_tol = 1e-12;
    // Relative moment change between N/2 and N that triggers one refinement to 2N.
    double refinement_tol = 1e-8;
    bool refine = true;
    bool parallel = true;
    RootMethod method = RootMethod::Illinois;
};

/// G(r) = r^{n+p}/(n+p) for power payoffs; for custom payoffs
/// G(r) = int_{R2}^r rho^{n-1} g(rho) drho (the base point only shifts C).
double payoff_antiderivative(double r, const ProblemSpec& spec);

/// Unique r in [R2, R1] with G(r) = v. Closed form for power payoffs,
/// bisection otherwise. DomainError outside [G(R2), G(R1)].
double inverse_antiderivative(double v, const ProblemSpec& spec);

/// Radial flux of div(theta) + g(|y|) = 0 with integration constant c:
/// r^{n-1} theta_r(r) = c - G(r).
struct FluxField {
    double c_const = 0.0;
    ProblemSpec spec;

    /// F(r) with theta = F(r) y, i.e. (c - G(r)) / r^n.
    double radial_factor(double r) const;
    /// |theta|(r) = |c - G(r)| / r^{n-1}.
    double magnitude(double r) const;
};

/// mu(rho, c) = (c - G(rho)) / (rho^{n-1} lambda) = sign(c - G) sqrt(alpha^2 + 2 eps ln lambda).
double mu_slope(double rho, double c, const ProblemSpec& spec);

struct ConstantBracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// Largest subinterval of [G(a), G(R1)] on which |c - G(rho)| <= alpha rho^{n-1}
/// for every rho in [a, R1]. Throws Infeasible when empty.
ConstantBracket feasible_constant_bracket(double a, const ProblemSpec& spec);

/// Candidate density on [a, R1] for a given constant: u(R1) = 0 and
/// u(r) = int_{R1}^r mu(rho, c) drho, on a grid clustered at the apex G^{-1}(c).
struct CandidateDensity {
    double a = 0.0;
    double c = 0.0;
    RadialGrid grid;
    std::vector<double> antiderivative;
    std::vector<double> log_lambda;
    std::vector<double> slope;
    std::vector<double> u;
};

CandidateDensity candidate_density(double a, double c, const ProblemSpec& spec,
                                   const SolverOptions& opts = {});

/// M(c) = u(a; c) = -int_a^{R1} mu(rho, c) drho. Strictly decreasing in c.
double boundary_mismatch(double c, double a, const ProblemSpec& spec,
                         const SolverOptions& opts = {});

/// C(a): the zero of M on the feasible bracket.
double solve_constant(double a, const ProblemSpec& spec, const SolverOptions& opts = {});

/// Pi(a) = omega_{n-1} int_a^{R1} r^{n-1} u(r; C(a)) dr.
double mass(double a, const ProblemSpec& spec, const SolverOptions& opts = {});

struct SupportSolve {
    double p_star = 0.0;
    double c_at_p_star = 0.0;
    // Smallest inner radius at which the construction exists, and Pi there.
    double a_min = 0.0;
    double mass_at_a_min = 0.0;
    int iterations = 0;
    std::vector<BracketStep> history;
};

/// Smallest a in (R2, R1) for which the feasible bracket is nonempty and M
/// changes sign on it; R2 + delta when the construction exists there.
double support_domain_start(const ProblemSpec& spec, const SolverOptions& opts = {});

/// p* with Pi(p*) = 1. InsufficientOuterRadius when the largest available
/// mass, Pi at the start of the existence domain, does not exceed 1.
SupportSolve solve_support(const ProblemSpec& spec, const SolverOptions& opts = {});

struct DensityBuild {
    SolutionProfile profile;
    SupportSolve support;
    // Relative moment change between the N/2 and N profiles at the same p*.
    double halving_change = 0.0;
    bool refined = false;
};

/// Density, dual fields and constants at p*; refined once to 2N when the
/// N/2 and N moments disagree by more than opts.refinement_tol (relative).
DensityBuild build_density_detailed(const ProblemSpec& spec, const SolverOptions& opts = {});
SolutionProfile build_density(const ProblemSpec& spec, const SolverOptions& opts = {});

/// Profile for a known support radius (no outer root-find).
SolutionProfile profile_at(double a, const ProblemSpec& spec, const SolverOptions& opts = {});

/// Mass omega int_a^{R1} r^{n-1} slope min(r - a, R1 - r) dr of a tent on
/// [a, R1]; Gauss-Legendre on each linear piece, exact for integer n.
double tent_mass(double a, double slope, const ProblemSpec& spec);

/// Unit-mass tent with slopes +-alpha ending at R1.
TentProfile tent_limit(const ProblemSpec& spec);

/// omega int r^{n-1} g(r) tent(r) dr by Gauss-Legendre on each linear piece.
double tent_moment(const TentProfile& tent, const ProblemSpec& spec);

}  // namespace momentopt
