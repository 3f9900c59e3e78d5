#include "momentopt/radial_solver.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <string>

#include "gauss_legendre.hpp"
#include "momentopt/errors.hpp"
#include "momentopt/kernels.hpp"

namespace momentopt {

namespace {

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

constexpr int kCustomPanels = 4;

// Golden-section maximization of f on [lo, hi]; returns the best value seen.
template <class F>
double refine_maximum(F&& f, double lo, double hi, double best) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

// Max over [a, b] of f by a uniform scan plus refinement around the best node.
template <class F>
double scan_maximum(F&& f, double a, double b) {
    constexpr int samples = 512;
    double best = -INFINITY;
    int best_k = 0;
    for (int k = 0; k <= samples; ++k) {
        const double r = (k == samples) ? b : a + (b - a) * k / samples;
        const double v = f(r);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    if (best_k > 0 && best_k < samples) {
        const double lo = a + (b - a) * (best_k - 1) / samples;
        const double hi = a + (b - a) * (best_k + 1) / samples;
        best = refine_maximum(f, lo, hi, best);
    }
    return best;
}

double omega(const ProblemSpec& spec) { return sphere_surface_area(spec.n); }

double weighted_moment(const std::vector<double>& u, const RadialGrid& grid,
                       const ProblemSpec& spec) {
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f[i] = ipow(grid[i], spec.n - 1) * evaluate_payoff(spec.payoff, grid[i]) * u[i];
    }
    return omega(spec) * radial_integral(f, grid);
}

bool construction_exists(double a, const ProblemSpec& spec, const SolverOptions& opts) {
    try {
        const ConstantBracket br = feasible_constant_bracket(a, spec);
        return boundary_mismatch(br.lo, a, spec, opts) >= 0.0 &&
               boundary_mismatch(br.hi, a, spec, opts) <= 0.0;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Infeasible || e.kind() == ErrorKind::FluxExceedsBound) {
            return false;
        }
        throw;
    }
}

}  // namespace

double payoff_antiderivative(double r, const ProblemSpec& spec) {
    if (const auto* power = std::get_if<PowerPayoff>(&spec.payoff)) {
        const double k = spec.n + power->p;
        return std::pow(r, k) / k;
    }
    const auto& g = std::get<CustomPayoff>(spec.payoff).g;
    const int n = spec.n;
    return detail::gauss_legendre_composite(
        [&](double rho) { return ipow(rho, n - 1) * g(rho); }, spec.r_inner, r, kCustomPanels);
}

double inverse_antiderivative(double v, const ProblemSpec& spec) {
    const double g_lo = payoff_antiderivative(spec.r_inner, spec);
    const double g_hi = payoff_antiderivative(spec.r_outer, spec);
    const double slack = 1e-12 * std::max(std::abs(g_lo), std::abs(g_hi));
    if (!(v >= g_lo - slack && v <= g_hi + slack)) {
        throw Error(ErrorKind::DomainError,
                    fmt("inverse_antiderivative: %.17g outside [G(R2), G(R1)] = [%.17g, %.17g]", v,
                        g_lo, g_hi));
    }
    if (v <= g_lo) return spec.r_inner;
    if (v >= g_hi) return spec.r_outer;
    if (const auto* power = std::get_if<PowerPayoff>(&spec.payoff)) {
        const double k = spec.n + power->p;
        return std::clamp(std::pow(k * v, 1.0 / k), spec.r_inner, spec.r_outer);
    }
    double lo = spec.r_inner;
    double hi = spec.r_outer;
    const double tol = 1e-13 * spec.r_outer;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (payoff_antiderivative(mid, spec) < v) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double FluxField::radial_factor(double r) const {
    return (c_const - payoff_antiderivative(r, spec)) / ipow(r, spec.n);
}

double FluxField::magnitude(double r) const {
    return std::abs(c_const - payoff_antiderivative(r, spec)) / ipow(r, spec.n - 1);
}

double mu_slope(double rho, double c, const ProblemSpec& spec) {
    const DaeParams dae = DaeParams::make(spec.alpha, spec.epsilon);
    const double d = c - payoff_antiderivative(rho, spec);
    const double theta = d / ipow(rho, spec.n - 1);
    const double t = e_invert_log(theta * theta, dae);
    const double s = slope_from_log(t, dae);
    return d < 0.0 ? -s : s;
}

ConstantBracket feasible_constant_bracket(double a, const ProblemSpec& spec) {
    const double r1 = spec.r_outer;
    if (!(a >= spec.r_inner && a < r1)) {
        throw Error(ErrorKind::DomainError,
                    fmt("feasible_constant_bracket: inner radius %.17g outside [R2, R1)", a));
    }
    const double alpha = spec.alpha;
    const int n = spec.n;
    // c >= G(rho) - alpha rho^{n-1} and c <= G(rho) + alpha rho^{n-1} for all rho.
    const double lower = scan_maximum(
        [&](double r) { return payoff_antiderivative(r, spec) - alpha * ipow(r, n - 1); }, a, r1);
    const double upper = -scan_maximum(
        [&](double r) { return -(payoff_antiderivative(r, spec) + alpha * ipow(r, n - 1)); }, a,
        r1);
    ConstantBracket br{std::max(lower, payoff_antiderivative(a, spec)),
                       std::min(upper, payoff_antiderivative(r1, spec))};
    if (!(br.lo <= br.hi)) {
        throw Error(ErrorKind::Infeasible,
                    fmt("no constant keeps the flux within alpha on [%.17g, %.17g] "
                        "(alpha = %.17g too small for the annulus)",
                        a, r1, alpha));
    }
    return br;
}

CandidateDensity candidate_density(double a, double c, const ProblemSpec& spec,
                                   const SolverOptions& opts) {
    const DaeParams dae = DaeParams::make(spec.alpha, spec.epsilon);
    const double r1 = spec.r_outer;
    const double g_a = payoff_antiderivative(a, spec);
    const double g_r1 = payoff_antiderivative(r1, spec);
    const double apex = inverse_antiderivative(std::clamp(c, g_a, g_r1), spec);

    CandidateDensity out;
    out.a = a;
    out.c = c;
    out.grid = RadialGrid::clustered(a, r1, apex, opts.cells);
    const std::size_t size = out.grid.size();
    std::vector<double> radial_power(size);
    out.antiderivative.resize(size);
    out.log_lambda.resize(size);
    out.slope.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        radial_power[i] = ipow(out.grid[i], spec.n - 1);
        out.antiderivative[i] = payoff_antiderivative(out.grid[i], spec);
    }
    const SlopeFieldInput in{radial_power, out.antiderivative, c, dae};
    const SlopeFieldStatus st =
        evaluate_slope_field(in, {out.log_lambda, out.slope}, opts.parallel);
    const double a2 = spec.alpha * spec.alpha;
    if (st.max_flux_sq > a2 * (1.0 + 1e-12)) {
        throw Error(ErrorKind::FluxExceedsBound,
                    fmt("flux magnitude %.17g exceeds alpha = %.17g at r = %.17g",
                        std::sqrt(st.max_flux_sq), spec.alpha, out.grid[st.worst_index]));
    }
    // u(r) = int_{R1}^r mu = U(r) - U(R1) with U the running integral from a.
    std::vector<double> running = cumulative_radial_integral(out.slope, out.grid);
    const double total = running.back();
    out.u.resize(size);
    for (std::size_t i = 0; i < size; ++i) out.u[i] = running[i] - total;
    out.u.back() = 0.0;
    return out;
}

double boundary_mismatch(double c, double a, const ProblemSpec& spec, const SolverOptions& opts) {
    return candidate_density(a, c, spec, opts).u.front();
}

double solve_constant(double a, const ProblemSpec& spec, const SolverOptions& opts) {
    const ConstantBracket br = feasible_constant_bracket(a, spec);
    const double m_lo = boundary_mismatch(br.lo, a, spec, opts);
    const double m_hi = boundary_mismatch(br.hi, a, spec, opts);
    if (m_lo < 0.0 || m_hi > 0.0) {
        throw Error(ErrorKind::NoRoot,
                    fmt("boundary mismatch keeps one sign on the feasible bracket at a = %.17g "
                        "(M(lo) = %.17g, M(hi) = %.17g)",
                        a, m_lo, m_hi));
    }
    const double scale = payoff_antiderivative(spec.r_outer, spec) - payoff_antiderivative(a, spec);
    const RootResult res = find_root(
        [&](double c) { return boundary_mismatch(c, a, spec, opts); }, br.lo, br.hi, m_lo, m_hi,
        opts.constant_tol * scale, opts.method);
    // The lower end has M >= 0, so the density built from it is nonnegative at a.
    return res.lo;
}

double mass(double a, const ProblemSpec& spec, const SolverOptions& opts) {
    const double c = solve_constant(a, spec, opts);
    const CandidateDensity cd = candidate_density(a, c, spec, opts);
    std::vector<double> f(cd.grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = ipow(cd.grid[i], spec.n - 1) * cd.u[i];
    return omega(spec) * radial_integral(f, cd.grid);
}

double support_domain_start(const ProblemSpec& spec, const SolverOptions& opts) {
    const double width = spec.r_outer - spec.r_inner;
    const double delta = 1e-6 * width;
    double lo = spec.r_inner + delta;
    if (construction_exists(lo, spec, opts)) return lo;
    double hi = spec.r_outer - delta;
    if (!construction_exists(hi, spec, opts)) {
        throw Error(ErrorKind::Infeasible,
                    fmt("no inner radius in (%.17g, %.17g) admits a density with slope bound "
                        "alpha = %.17g",
                        spec.r_inner, spec.r_outer, spec.alpha));
    }
    const double tol = opts.support_tol * width;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (construction_exists(mid, spec, opts)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

SupportSolve solve_support(const ProblemSpec& spec, const SolverOptions& opts) {
    SupportSolve out;
    const double width = spec.r_outer - spec.r_inner;
    out.a_min = support_domain_start(spec, opts);
    out.mass_at_a_min = mass(out.a_min, spec, opts);
    if (!(out.mass_at_a_min > 1.0)) {
        throw Error(ErrorKind::InsufficientOuterRadius,
                    fmt("largest attainable mass %.17g (support from %.17g) does not exceed 1; "
                        "R1 = %.17g is too small",
                        out.mass_at_a_min, out.a_min, spec.r_outer));
    }
    const double a_hi = spec.r_outer - 1e-6 * width;
    const double mass_hi = mass(a_hi, spec, opts);
    if (!(mass_hi < 1.0)) {
        throw Error(ErrorKind::NoRoot, fmt("mass %.17g near R1 is not below 1", mass_hi));
    }
    const RootResult res = find_root([&](double a) { return mass(a, spec, opts) - 1.0; },
                                     out.a_min, a_hi, out.mass_at_a_min - 1.0, mass_hi - 1.0,
                                     opts.support_tol * width, opts.method);
    out.p_star = res.root;
    out.c_at_p_star = solve_constant(out.p_star, spec, opts);
    out.iterations = res.iterations;
    out.history = res.history;
    return out;
}

SolutionProfile profile_at(double a, const ProblemSpec& spec, const SolverOptions& opts) {
    const double c = solve_constant(a, spec, opts);
    const CandidateDensity cd = candidate_density(a, c, spec, opts);
    SolutionProfile prof;
    prof.epsilon = spec.epsilon;
    prof.c_const = c;
    prof.p_star = a;
    prof.grid = cd.grid;
    prof.u = cd.u;
    prof.du = cd.slope;
    prof.xi = cd.log_lambda;
    const std::size_t size = cd.grid.size();
    prof.lambda.resize(size);
    prof.theta.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        prof.lambda[i] = std::exp(cd.log_lambda[i]);
        prof.theta[i] = std::abs(c - cd.antiderivative[i]) / ipow(cd.grid[i], spec.n - 1);
    }
    return prof;
}

DensityBuild build_density_detailed(const ProblemSpec& spec, const SolverOptions& opts) {
    DensityBuild out;
    out.support = solve_support(spec, opts);
    out.profile = profile_at(out.support.p_star, spec, opts);
    if (!opts.refine) return out;

    SolverOptions coarse = opts;
    coarse.cells = opts.cells / 2;
    if (coarse.cells % 2 != 0 || coarse.cells < 2) return out;
    const SolutionProfile half = profile_at(out.support.p_star, spec, coarse);
    const double fine_moment = weighted_moment(out.profile.u, out.profile.grid, spec);
    const double coarse_moment = weighted_moment(half.u, half.grid, spec);
    out.halving_change = std::abs(fine_moment - coarse_moment) / std::abs(fine_moment);
    if (out.halving_change > opts.refinement_tol) {
        SolverOptions fine = opts;
        fine.cells = 2 * opts.cells;
        out.support = solve_support(spec, fine);
        out.profile = profile_at(out.support.p_star, spec, fine);
        out.refined = true;
    }
    return out;
}

SolutionProfile build_density(const ProblemSpec& spec, const SolverOptions& opts) {
    return build_density_detailed(spec, opts).profile;
}

double tent_mass(double a, double slope, const ProblemSpec& spec) {
    const double r1 = spec.r_outer;
    const double m = 0.5 * (a + r1);
    const int n = spec.n;
    const double rising = detail::gauss_legendre_integral(
        [&](double r) { return ipow(r, n - 1) * (r - a); }, a, m);
    const double falling = detail::gauss_legendre_integral(
        [&](double r) { return ipow(r, n - 1) * (r1 - r); }, m, r1);
    return omega(spec) * slope * (rising + falling);
}

TentProfile tent_limit(const ProblemSpec& spec) {
    const double full = tent_mass(spec.r_inner, spec.alpha, spec);
    if (!(full > 1.0)) {
        throw Error(ErrorKind::InsufficientOuterRadius,
                    fmt("the widest tent on [%.17g, %.17g] carries mass %.17g <= 1", spec.r_inner,
                        spec.r_outer, full));
    }
    double lo = spec.r_inner;
    double hi = spec.r_outer;
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (tent_mass(mid, spec.alpha, spec) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Of the two adjacent doubles, keep the one with the smaller mass defect.
    const double a = std::abs(tent_mass(lo, spec.alpha, spec) - 1.0) <=
                             std::abs(tent_mass(hi, spec.alpha, spec) - 1.0)
                         ? lo
                         : hi;
    TentProfile tent;
    tent.a = a;
    tent.m = 0.5 * (a + spec.r_outer);
    tent.h = spec.alpha * (spec.r_outer - a) / 2.0;
    tent.slope = spec.alpha;
    tent.r_outer = spec.r_outer;
    return tent;
}

double tent_moment(const TentProfile& tent, const ProblemSpec& spec) {
    const int n = spec.n;
    auto integrand = [&](double r) {
        return ipow(r, n - 1) * evaluate_payoff(spec.payoff, r) * tent(r);
    };
    // Several panels per piece so non-polynomial payoffs are integrated to
    // roundoff as well.
    constexpr int panels = 8;
    return omega(spec) * (detail::gauss_legendre_composite(integrand, tent.a, tent.m, panels) +
                          detail::gauss_legendre_composite(integrand, tent.m, tent.r_outer, panels));
}

}  // namespace momentopt
