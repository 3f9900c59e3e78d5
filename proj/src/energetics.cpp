#include "momentopt/energetics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

#include "momentopt/errors.hpp"
#include "momentopt/radial_solver.hpp"

namespace momentopt {

namespace {

double omega(const ProblemSpec& spec) { return sphere_surface_area(spec.n); }

// omega int r^{n-1} f_i dr over the profile grid.
template <class F>
double weighted_integral(const SolutionProfile& profile, const ProblemSpec& spec, F&& f) {
    const RadialGrid& grid = profile.grid;
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = ipow(grid[i], spec.n - 1) * f(i);
    return omega(spec) * radial_integral(values, grid);
}

double payoff_at(const ProblemSpec& spec, double r) { return evaluate_payoff(spec.payoff, r); }

// lambda * (something in xi); zero when xi is not representable (lambda below
// the normal range after a text round trip), where the product is < 1e-305.
double lambda_times(double lambda, double xi, double factor) {
    if (!std::isfinite(xi)) return 0.0;
    return lambda * factor;
}

}  // namespace

double moment(const SolutionProfile& profile, const ProblemSpec& spec) {
    return weighted_integral(profile, spec,
                             [&](std::size_t i) {
                                 return payoff_at(spec, profile.grid[i]) * profile.u[i];
                             });
}

double moment(const TentProfile& tent, const ProblemSpec& spec) { return tent_moment(tent, spec); }

double moment(const OracleResult& oracle, const ProblemSpec& spec) {
    const std::vector<double> w = trapezoid_weights(oracle.grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = oracle.grid[i];
        acc += w[i] * ipow(r, spec.n - 1) * payoff_at(spec, r) * oracle.u_opt[i];
    }
    return omega(spec) * acc;
}

double primal_energy(const SolutionProfile& profile, const ProblemSpec& spec,
                     EnergyDomain domain) {
    const double eps = spec.epsilon;
    const double a2 = spec.alpha * spec.alpha;
    const double support = weighted_integral(profile, spec, [&](std::size_t i) {
        const double du = profile.du[i];
        const double h = eps * std::exp((du * du - a2) / (2.0 * eps));
        return h - payoff_at(spec, profile.grid[i]) * profile.u[i];
    });
    if (domain == EnergyDomain::Support) return support;
    // Zero density (zero gradient) on R2 < r < p*.
    const double exterior = eps * std::exp(-a2 / (2.0 * eps)) *
                            annulus_volume(spec.n, spec.r_inner, profile.p_star);
    return support + exterior;
}

double total_complementary(const SolutionProfile& profile, const ProblemSpec& spec) {
    const double eps = spec.epsilon;
    const double a2 = spec.alpha * spec.alpha;
    return weighted_integral(profile, spec, [&](std::size_t i) {
        const double du = profile.du[i];
        const double lambda = profile.lambda[i];
        const double xi = profile.xi[i];
        const double phi = (du * du - a2) / (2.0 * eps);
        // zeta = eps lambda; Psi*(zeta) = zeta (ln(zeta / eps) - 1) with ln(zeta / eps) = xi.
        const double coupling = lambda_times(lambda, xi, eps * phi);
        const double psi_star = lambda_times(lambda, xi, eps * (xi - 1.0));
        return coupling - psi_star - payoff_at(spec, profile.grid[i]) * profile.u[i];
    });
}

double dual_energy(const SolutionProfile& profile, const ProblemSpec& spec) {
    const double eps = spec.epsilon;
    const double a2 = spec.alpha * spec.alpha;
    return -0.5 * weighted_integral(profile, spec, [&](std::size_t i) {
        const double lambda = profile.lambda[i];
        const double theta = profile.theta[i];
        const double xi = profile.xi[i];
        const double flux_term = lambda > 0.0 ? theta * theta / lambda : 0.0;
        return flux_term + a2 * lambda + lambda_times(lambda, xi, 2.0 * eps * (xi - 1.0));
    });
}

double el_divergence_residual(const SolutionProfile& profile, const ProblemSpec& spec) {
    const RadialGrid& grid = profile.grid;
    const std::size_t size = grid.size();
    std::vector<double> flux(size);
    for (std::size_t i = 0; i < size; ++i) {
        flux[i] = ipow(grid[i], spec.n - 1) * profile.lambda[i] * profile.du[i];
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < size; ++i) {
        const double h1 = grid[i] - grid[i - 1];
        const double h2 = grid[i + 1] - grid[i];
        // Three-point derivative on a nonuniform stencil, exact for quadratics.
        const double d = -h2 / (h1 * (h1 + h2)) * flux[i - 1] + (h2 - h1) / (h1 * h2) * flux[i] +
                         h1 / (h2 * (h1 + h2)) * flux[i + 1];
        const double source = ipow(grid[i], spec.n - 1) * payoff_at(spec, grid[i]);
        worst = std::max(worst, std::abs(d + source) / source);
    }
    return worst;
}

double derivative_consistency_residual(const SolutionProfile& profile) {
    const std::vector<double> running = cumulative_radial_integral(profile.du, profile.grid);
    const double total = running.back();
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < running.size(); ++i) {
        scale = std::max(scale, std::abs(profile.u[i]));
        worst = std::max(worst, std::abs(profile.u[i] - (running[i] - total)));
    }
    return scale > 0.0 ? worst / scale : worst;
}

double el_residual(const SolutionProfile& profile, const ProblemSpec& spec) {
    return std::max(el_divergence_residual(profile, spec),
                    derivative_consistency_residual(profile));
}

double constitutive_residual(const SolutionProfile& profile, const ProblemSpec& spec) {
    const double eps = spec.epsilon;
    const double a2 = spec.alpha * spec.alpha;
    const double floor_log = std::log(DBL_MIN);
    double worst = 0.0;
    for (std::size_t i = 0; i < profile.du.size(); ++i) {
        const double du = profile.du[i];
        const double phi = (du * du - a2) / (2.0 * eps);
        const double xi = profile.xi[i];
        const double r = std::isfinite(xi) ? std::abs(phi - xi) : std::max(0.0, phi - floor_log);
        worst = std::max(worst, r);
    }
    return worst;
}

ConstraintResiduals constraint_report(const SolutionProfile& profile, const ProblemSpec& spec) {
    ConstraintResiduals res;
    res.boundary = std::max(std::abs(profile.u.front()), std::abs(profile.u.back()));
    res.min_u = *std::min_element(profile.u.begin(), profile.u.end());
    const double total = weighted_integral(profile, spec, [&](std::size_t i) { return profile.u[i]; });
    res.normalization = std::abs(total - 1.0);
    double sup = 0.0;
    for (double d : profile.du) sup = std::max(sup, std::abs(d));
    res.gradient_excess = std::max(0.0, sup - spec.alpha);
    return res;
}

ConstraintResiduals constraint_report(const TentProfile& tent, const ProblemSpec& spec) {
    ConstraintResiduals res;
    res.boundary = std::max(std::abs(tent(tent.a)), std::abs(tent(tent.r_outer)));
    res.min_u = std::min({tent(tent.a), tent(tent.m), tent(tent.r_outer)});
    res.normalization = std::abs(tent_mass(tent.a, tent.slope, spec) - 1.0);
    res.gradient_excess = std::max(0.0, tent.slope - spec.alpha);
    return res;
}

EnergyReport duality_report(const SolutionProfile& profile, const ProblemSpec& spec) {
    EnergyReport rep;
    rep.epsilon = profile.epsilon;
    rep.c_const = profile.c_const;
    rep.p_star = profile.p_star;
    rep.primal_energy_support = primal_energy(profile, spec, EnergyDomain::Support);
    rep.primal_energy_full = primal_energy(profile, spec, EnergyDomain::FullAnnulus);
    rep.xi_energy = total_complementary(profile, spec);
    rep.dual_energy = dual_energy(profile, spec);
    rep.duality_gap_rel = std::abs(rep.primal_energy_support - rep.dual_energy) /
                          std::max(1.0, std::abs(rep.primal_energy_support));
    rep.moment = moment(profile, spec);
    rep.residual_el = el_residual(profile, spec);
    rep.residual_constitutive = constitutive_residual(profile, spec);
    const ConstraintResiduals c = constraint_report(profile, spec);
    rep.residual_normalization = c.normalization;
    rep.residual_boundary = c.boundary;
    rep.residual_gradient_excess = c.gradient_excess;
    return rep;
}

TestFunction::TestFunction(double a, double b, std::vector<double> coefficients)
    : a_(a), b_(b), coefficients_(std::move(coefficients)) {
    if (!(b > a)) throw Error(ErrorKind::BadConfig, "test function: need a < b");
    if (coefficients_.size() > 16) {
        throw Error(ErrorKind::BadConfig, "test function: at most 16 sine terms");
    }
}

TestFunction TestFunction::random(double a, double b, std::uint64_t seed, int terms) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> coeffs(static_cast<std::size_t>(terms));
    for (double& c : coeffs) c = normal(rng);
    return TestFunction(a, b, std::move(coeffs));
}

double TestFunction::value(double r) const {
    // Outside the span the function is extended by zero.
    if (r <= a_ || r >= b_) return 0.0;
    const double x = std::numbers::pi * (r - a_) / (b_ - a_);
    double acc = 0.0;
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        acc += coefficients_[k] * std::sin(static_cast<double>(k + 1) * x);
    }
    return acc;
}

double TestFunction::derivative(double r) const {
    const double w = std::numbers::pi / (b_ - a_);
    const double x = w * (r - a_);
    double acc = 0.0;
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        const double kk = static_cast<double>(k + 1);
        acc += coefficients_[k] * kk * w * std::cos(kk * x);
    }
    return acc;
}

TestFunction TestFunction::scaled(double factor) const {
    std::vector<double> c = coefficients_;
    for (double& v : c) v *= factor;
    return TestFunction(a_, b_, std::move(c));
}

double second_variation_primal(const SolutionProfile& profile, const TestFunction& phi,
                               const ProblemSpec& spec) {
    const double eps = spec.epsilon;
    return weighted_integral(profile, spec, [&](std::size_t i) {
        const double dphi = phi.derivative(profile.grid[i]);
        const double du = profile.du[i];
        return profile.lambda[i] * (du * du * dphi * dphi / eps + dphi * dphi);
    });
}

double second_variation_dual(const SolutionProfile& profile, const TestFunction& psi,
                             const ProblemSpec& spec) {
    const double eps = spec.epsilon;
    const RadialGrid& grid = profile.grid;
    const auto jac = grid.jacobian();
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = psi.value(grid[i]);
        // Nodes without quadrature weight (or psi = 0) contribute nothing,
        // even where 1/lambda overflows.
        if (v == 0.0 || jac[i] == 0.0) {
            values[i] = 0.0;
            continue;
        }
        const double lambda = profile.lambda[i];
        const double xi = profile.xi[i];
        const double inv_lambda = std::isfinite(xi) ? std::exp(-xi) : 1.0 / lambda;
        // theta / lambda = |u'| by the dual algebraic equation; used when the
        // quotient itself is not representable.
        const double ratio = lambda >= DBL_MIN ? profile.theta[i] / lambda : std::abs(profile.du[i]);
        // eps theta^2 psi^2 / zeta^3 + psi^2 / zeta with zeta = eps lambda.
        values[i] = ipow(grid[i], spec.n - 1) * v * v * inv_lambda / eps *
                    (1.0 + ratio * ratio / eps);
    }
    return -omega(spec) * radial_integral(values, grid);
}

}  // namespace momentopt
