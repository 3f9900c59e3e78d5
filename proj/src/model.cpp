#include "momentopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "momentopt/errors.hpp"

namespace momentopt {

namespace {

[[noreturn]] void bad_config(const std::string& what) {
    throw Error(ErrorKind::BadConfig, what);
}

void check_custom_payoff(const CustomPayoff& payoff, double r_in, double r_out) {
    if (!payoff.g) bad_config("payoff: custom payoff '" + payoff.name + "' has no function");
    // Sampled checks only; convexity of a black box cannot be certified.
    constexpr int samples = 1000;
    std::vector<double> g(samples);
    for (int i = 0; i < samples; ++i) {
        const double r = r_in + (r_out - r_in) * (static_cast<double>(i) / (samples - 1));
        g[i] = payoff.g(r);
        if (!(g[i] > 0.0) || !std::isfinite(g[i])) {
            bad_config("payoff: custom payoff '" + payoff.name + "' must be positive on [R2, R1]");
        }
    }
    for (int i = 1; i < samples; ++i) {
        if (g[i] < g[i - 1]) {
            bad_config("payoff: custom payoff '" + payoff.name + "' must be nondecreasing");
        }
    }
    for (int i = 1; i + 1 < samples; ++i) {
        if (g[i - 1] - 2.0 * g[i] + g[i + 1] < -1e-10) {
            bad_config("payoff: custom payoff '" + payoff.name + "' must be convex");
        }
    }
}

}  // namespace

double evaluate_payoff(const PayoffFunction& payoff, double r) {
    if (const auto* power = std::get_if<PowerPayoff>(&payoff)) {
        return std::pow(r, power->p);
    }
    return std::get<CustomPayoff>(payoff).g(r);
}

CustomPayoff named_payoff(std::string_view name) {
    if (name == "linear") return {"linear", [](double r) { return r; }};
    if (name == "affine") return {"affine", [](double r) { return 1.0 + r; }};
    if (name == "exp") return {"exp", [](double r) { return std::exp(r); }};
    if (name == "cosh") return {"cosh", [](double r) { return std::cosh(r); }};
    bad_config("payoff: unknown custom payoff '" + std::string(name) + "'");
}

ProblemSpec validate_spec(ProblemSpec raw) {
    if (raw.n < 1) bad_config("n: dimension must be >= 1");
    if (!(raw.r_inner > 0.0) || !std::isfinite(raw.r_inner)) {
        bad_config("r_inner: must be positive");
    }
    if (!(raw.r_outer > raw.r_inner) || !std::isfinite(raw.r_outer)) {
        bad_config("r_outer: must exceed r_inner (r_outer <= r_inner)");
    }
    if (!(raw.alpha > 0.0) || !std::isfinite(raw.alpha)) bad_config("alpha: must be positive");
    if (!(raw.epsilon > 0.0) || !std::isfinite(raw.epsilon)) {
        bad_config("epsilon: must be positive (epsilon <= 0)");
    }
    if (const auto* power = std::get_if<PowerPayoff>(&raw.payoff)) {
        if (!(power->p > 0.0) || !std::isfinite(power->p)) {
            bad_config("payoff: power exponent p must be positive");
        }
    } else {
        check_custom_payoff(std::get<CustomPayoff>(raw.payoff), raw.r_inner, raw.r_outer);
    }
    return raw;
}

ProblemSpec with_epsilon(ProblemSpec spec, double epsilon) {
    spec.epsilon = epsilon;
    return spec;
}

double ipow(double x, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= x;
    return out;
}

double sphere_surface_area(int n) {
    if (n < 1) bad_config("sphere_surface_area: n must be >= 1");
    // omega(1) = 2, omega(2) = 2 pi, omega(n + 2) = 2 pi omega(n) / n.
    double omega = (n % 2 == 1) ? 2.0 : 2.0 * std::numbers::pi;
    for (int k = (n % 2 == 1) ? 1 : 2; k + 2 <= n; k += 2) {
        omega *= 2.0 * std::numbers::pi / static_cast<double>(k);
    }
    return omega;
}

double annulus_volume(int n, double r_in, double r_out) {
    return sphere_surface_area(n) / static_cast<double>(n) * (ipow(r_out, n) - ipow(r_in, n));
}

double TentProfile::operator()(double r) const {
    if (r <= a || r >= r_outer) return 0.0;
    return slope * std::min(r - a, r_outer - r);
}

}  // namespace momentopt
