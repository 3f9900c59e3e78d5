#include <doctest.h>

#include <cmath>
#include <numbers>

#include "momentopt/errors.hpp"
#include "momentopt/model.hpp"

using namespace momentopt;

namespace {

ProblemSpec reference() {
    ProblemSpec s;
    s.n = 2;
    s.payoff = PowerPayoff{2.0};
    s.alpha = 1.0;
    s.r_outer = 6.0;
    s.r_inner = 1.0;
    s.epsilon = 0.1;
    return s;
}

ErrorKind kind_of(const ProblemSpec& s) {
    try {
        validate_spec(s);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::DomainError;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("validate_spec accepts the reference instance unchanged") {
    const ProblemSpec s = validate_spec(reference());
    CHECK(s.n == 2);
    CHECK(s.alpha == 1.0);
    CHECK(s.epsilon == 0.1);
}

TEST_CASE("validate_spec rejects each broken invariant") {
    ProblemSpec s = reference();
    s.r_outer = 1.0;
    s.r_inner = 2.0;
    CHECK(kind_of(s) == ErrorKind::BadConfig);

    s = reference();
    s.epsilon = 0.0;
    CHECK(kind_of(s) == ErrorKind::BadConfig);

    s = reference();
    s.alpha = -1.0;
    CHECK(kind_of(s) == ErrorKind::BadConfig);

    s = reference();
    s.n = 0;
    CHECK(kind_of(s) == ErrorKind::BadConfig);

    s = reference();
    s.payoff = PowerPayoff{0.0};
    CHECK(kind_of(s) == ErrorKind::BadConfig);

    s = reference();
    s.r_inner = 0.0;
    CHECK(kind_of(s) == ErrorKind::BadConfig);
}

TEST_CASE("validate_spec message names the field") {
    ProblemSpec s = reference();
    s.epsilon = -1.0;
    try {
        validate_spec(s);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("epsilon") != std::string::npos);
    }
}

TEST_CASE("custom payoffs are sampled for positivity, monotonicity and convexity") {
    ProblemSpec s = reference();
    s.payoff = named_payoff("exp");
    CHECK_NOTHROW(validate_spec(s));
    s.payoff = CustomPayoff{"decreasing", [](double r) { return 10.0 - r; }};
    CHECK(kind_of(s) == ErrorKind::BadConfig);
    s.payoff = CustomPayoff{"concave", [](double r) { return std::sqrt(r); }};
    CHECK(kind_of(s) == ErrorKind::BadConfig);
    s.payoff = CustomPayoff{"negative", [](double r) { return r - 3.0; }};
    CHECK(kind_of(s) == ErrorKind::BadConfig);
    CHECK_THROWS_AS(named_payoff("nope"), Error);
}

TEST_CASE("sphere_surface_area small dimensions") {
    CHECK(sphere_surface_area(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sphere_surface_area(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(sphere_surface_area(0), Error);
}

TEST_CASE("sphere_surface_area matches the Gamma formula and its recurrence") {
    for (int n = 1; n <= 10; ++n) {
        const double gamma_form = 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
        CHECK(sphere_surface_area(n) == doctest::Approx(gamma_form).epsilon(1e-14));
        CHECK(sphere_surface_area(n + 2) ==
              doctest::Approx(2.0 * std::numbers::pi * sphere_surface_area(n) / n).epsilon(1e-14));
    }
}

TEST_CASE("annulus volume") {
    CHECK(annulus_volume(2, 1.0, 2.0) == doctest::Approx(3.0 * std::numbers::pi));
    CHECK(annulus_volume(3, 0.0, 1.0) == doctest::Approx(4.0 / 3.0 * std::numbers::pi));
}

TEST_CASE("tent profile shape") {
    TentProfile t{1.0, 3.5, 2.5, 1.0, 6.0};
    CHECK(t(1.0) == 0.0);
    CHECK(t(6.0) == 0.0);
    CHECK(t(3.5) == doctest::Approx(2.5));
    CHECK(t(2.0) == doctest::Approx(1.0));
    CHECK(t(0.5) == 0.0);
}

}  // TEST_SUITE
