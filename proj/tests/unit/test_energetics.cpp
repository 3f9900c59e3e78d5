#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "instances.hpp"
#include "momentopt/energetics.hpp"
#include "momentopt/radial_solver.hpp"

using namespace momentopt;
using testing_instances::companion;

namespace {

const SolutionProfile& built() {
    static const SolutionProfile p = build_density(companion(0.1));
    return p;
}

SolutionProfile constant_profile(double a, double b, double value, const ProblemSpec& spec) {
    SolutionProfile p;
    p.epsilon = spec.epsilon;
    p.p_star = a;
    p.grid = RadialGrid::uniform(a, b, 64);
    const double t = -spec.alpha * spec.alpha / (2.0 * spec.epsilon);
    p.u.assign(p.grid.size(), value);
    p.du.assign(p.grid.size(), 0.0);
    p.xi.assign(p.grid.size(), t);
    p.lambda.assign(p.grid.size(), std::exp(t));
    p.theta.assign(p.grid.size(), 0.0);
    return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("energetics") {

TEST_CASE("moment of simple densities") {
    ProblemSpec s = companion();
    s.r_outer = 2.0;
    CHECK(moment(constant_profile(1.0, 2.0, 0.0, s), s) == 0.0);
    const double m = moment(constant_profile(1.0, 2.0, 1.0 / (3.0 * std::numbers::pi), s), s);
    CHECK(m == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("outward mass transfer raises the moment") {
    const ProblemSpec s = companion();
    auto normalized_tent = [&](double a) {
        const double slope = 1.0 / tent_mass(a, 1.0, s);
        return TentProfile{a, 0.5 * (a + 6.0), slope * (6.0 - a) / 2.0, slope, 6.0};
    };
    CHECK(moment(normalized_tent(5.0), s) < moment(normalized_tent(5.5), s));
    CHECK(moment(normalized_tent(2.0), s) < moment(normalized_tent(5.0), s));
}

TEST_CASE("primal energy of the zero function") {
    const ProblemSpec s = companion(0.5);
    const SolutionProfile z = constant_profile(1.0, 6.0, 0.0, s);
    const double expected = 0.5 * std::exp(-100.0) * annulus_volume(2, 1.0, 6.0);
    CHECK(primal_energy(z, s, EnergyDomain::FullAnnulus) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("exterior term is the closed-form difference") {
    const ProblemSpec s = companion(0.1);
    const SolutionProfile& p = built();
    const double diff = primal_energy(p, s, EnergyDomain::FullAnnulus) -
                        primal_energy(p, s, EnergyDomain::Support);
    const double expected = 0.1 * std::exp(-500.0) * annulus_volume(2, 1.0, p.p_star);
    CHECK(diff == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("energy identities on a built profile") {
    const ProblemSpec s = companion(0.1);
    const SolutionProfile& p = built();
    const double primal = primal_energy(p, s, EnergyDomain::Support);
    const double xi = total_complementary(p, s);
    const double dual = dual_energy(p, s);
    CHECK(std::isfinite(xi));
    CHECK(xi < 0.0);
    CHECK(rel(xi, primal) <= 1e-12);
    CHECK(std::abs(dual - primal) / std::max(1.0, std::abs(primal)) <= 1e-5);

    // I = omega int r^{n-1} eps lambda - moment.
    SolutionProfile only_lambda = p;
    std::fill(only_lambda.u.begin(), only_lambda.u.end(), 0.0);
    const double lambda_part = primal_energy(only_lambda, s, EnergyDomain::Support);
    CHECK(rel(lambda_part - moment(p, s), primal) <= 1e-12);

    // |theta|^2 / lambda = lambda alpha^2 + 2 eps lambda ln lambda per node.
    double worst = 0.0;
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        const double l = p.lambda[i];
        const double lhs = p.theta[i] * p.theta[i] / l;
        const double rhs = l * s.alpha * s.alpha + 2.0 * s.epsilon * l * p.xi[i];
        worst = std::max(worst, std::abs(lhs - rhs) / (s.alpha * s.alpha));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("perturbing the multiplier breaks the identities") {
    const ProblemSpec s = companion(0.1);
    SolutionProfile up = built();
    for (std::size_t i = 0; i < up.lambda.size(); ++i) {
        up.lambda[i] *= 1.01;
        up.xi[i] = std::log(up.lambda[i]);
    }
    CHECK(rel(total_complementary(up, s), primal_energy(up, s, EnergyDomain::Support)) > 1e-10);
    CHECK(constitutive_residual(up, s) > 1e-3);

    SolutionProfile half = built();
    for (std::size_t i = 0; i < half.lambda.size(); ++i) {
        half.lambda[i] *= 0.5;
        half.xi[i] = std::log(half.lambda[i]);
    }
    CHECK(duality_report(half, s).duality_gap_rel > 1e-2);

    // zeta -> 2 zeta moves the dual energy off its maximum.
    SolutionProfile twice = built();
    for (std::size_t i = 0; i < twice.lambda.size(); ++i) {
        twice.lambda[i] *= 2.0;
        twice.xi[i] = std::log(twice.lambda[i]);
    }
    CHECK(dual_energy(twice, s) < dual_energy(built(), s));
}

TEST_CASE("residuals on a built profile and on corrupted copies") {
    const ProblemSpec s = companion(0.1);
    const SolutionProfile& p = built();
    CHECK(el_residual(p, s) <= 1e-6);
    CHECK(constitutive_residual(p, s) <= 1e-10);
    const std::size_t apex = p.grid.focus_index();
    // At the apex both sides of the law reach their minimum over the profile
    // (t_min = -500 only if the node hit G^{-1}(C) without rounding).
    const double phi_apex = (p.du[apex] * p.du[apex] - 100.0) / 0.2;
    CHECK(std::abs(phi_apex - p.xi[apex]) <= 1e-10);
    CHECK(p.xi[apex] == *std::min_element(p.xi.begin(), p.xi.end()));
    CHECK(p.xi[apex] >= -500.0);

    SolutionProfile scaled = p;
    for (double& u : scaled.u) u *= 1.1;
    CHECK(el_residual(scaled, s) >= 1e-2);
}

TEST_CASE("constraint residuals") {
    const ProblemSpec s = companion(0.1);
    const ConstraintResiduals c = constraint_report(built(), s);
    CHECK(c.boundary <= 1e-8);
    CHECK(c.min_u >= -1e-12);
    CHECK(c.normalization <= 1e-6);
    CHECK(c.gradient_excess <= 1e-12);

    const ConstraintResiduals t = constraint_report(tent_limit(s), s);
    CHECK(t.boundary <= 1e-8);
    CHECK(t.min_u >= -1e-12);
    CHECK(t.normalization <= 1e-12);
    CHECK(t.gradient_excess <= 1e-12);

    const ConstraintResiduals k = constraint_report(constant_profile(5.0, 6.0, 0.3, s), s);
    CHECK(k.boundary == 0.3);
}

TEST_CASE("test functions vanish at the ends and have exact derivatives") {
    const TestFunction f = TestFunction::random(2.0, 5.0, 42);
    CHECK(f.coefficients().size() == 16);
    CHECK(f.value(2.0) == 0.0);
    CHECK(f.value(5.0) == 0.0);
    for (double r : {2.3, 3.7, 4.9}) {
        const double h = 1e-6;
        CHECK(f.derivative(r) == doctest::Approx((f.value(r + h) - f.value(r - h)) / (2 * h)).epsilon(1e-6));
    }
    CHECK(TestFunction::random(2.0, 5.0, 42).coefficients() == f.coefficients());
    CHECK_THROWS_AS(TestFunction(1.0, 2.0, std::vector<double>(17, 1.0)), Error);
}

TEST_CASE("second variations: signs and quadratic scaling") {
    const ProblemSpec s = companion(0.1);
    const SolutionProfile& p = built();
    const TestFunction zero(p.p_star, 6.0, std::vector<double>(16, 0.0));
    CHECK(second_variation_primal(p, zero, s) == 0.0);
    CHECK(second_variation_dual(p, zero, s) == 0.0);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const TestFunction phi = TestFunction::random(p.p_star, 6.0, seed);
        CHECK(second_variation_primal(p, phi, s) >= -1e-10);
        CHECK(second_variation_dual(p, phi, s) <= 1e-10);
    }
    const TestFunction phi = TestFunction::random(p.p_star, 6.0, 5);
    const double v1 = second_variation_primal(p, phi, s);
    const double v3 = second_variation_primal(p, phi.scaled(3.0), s);
    CHECK(rel(v3, 9.0 * v1) <= 1e-12);
    const double d1 = second_variation_dual(p, phi, s);
    const double d3 = second_variation_dual(p, phi.scaled(3.0), s);
    CHECK(rel(d3, 9.0 * d1) <= 1e-12);
}

TEST_CASE("duality report is deterministic") {
    const ProblemSpec s = companion(0.1);
    const EnergyReport a = duality_report(built(), s);
    const EnergyReport b = duality_report(build_density(s), s);
    CHECK(a.moment == b.moment);
    CHECK(a.dual_energy == b.dual_energy);
    CHECK(a.residual_el == b.residual_el);
    CHECK(a.duality_gap_rel <= 1e-5);
}

}  // TEST_SUITE
