#include <doctest.h>

#include <cmath>

#include "momentopt/roots.hpp"

using namespace momentopt;

TEST_SUITE("roots") {

TEST_CASE("both methods find sqrt 2 and keep a valid bracket") {
    auto f = [](double x) { return x * x - 2.0; };
    for (RootMethod m : {RootMethod::Bisection, RootMethod::Illinois}) {
        const RootResult r = find_root(f, 0.0, 2.0, -2.0, 2.0, 1e-14, m);
        CHECK(std::abs(r.root - std::sqrt(2.0)) <= 1e-14);
        CHECK(f(r.lo) <= 0.0);
        CHECK(f(r.hi) >= 0.0);
        CHECK(r.hi - r.lo <= 1e-14);
        for (std::size_t i = 1; i < r.history.size(); ++i) {
            CHECK(r.history[i].lo >= r.history[i - 1].lo);
            CHECK(r.history[i].hi <= r.history[i - 1].hi);
        }
    }
}

TEST_CASE("Illinois beats bisection on smooth maps") {
    auto f = [](double x) { return std::exp(x) - 3.0; };
    const auto b = find_root(f, 0.0, 2.0, f(0.0), f(2.0), 1e-13, RootMethod::Bisection);
    const auto i = find_root(f, 0.0, 2.0, f(0.0), f(2.0), 1e-13, RootMethod::Illinois);
    CHECK(i.iterations < b.iterations);
    CHECK(i.root == doctest::Approx(std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("decreasing maps and exact endpoint zeros") {
    auto f = [](double x) { return 1.0 - x; };
    const auto r = find_root(f, 0.0, 3.0, 1.0, -2.0, 1e-12, RootMethod::Illinois);
    CHECK(r.root == doctest::Approx(1.0));
    const auto z = find_root(f, 1.0, 3.0, 0.0, -2.0, 1e-12, RootMethod::Illinois);
    CHECK(z.root == 1.0);
    CHECK(z.iterations == 0);
}

TEST_CASE("no sign change is NoRoot") {
    auto f = [](double x) { return x * x + 1.0; };
    try {
        find_root(f, -1.0, 1.0, 2.0, 2.0, 1e-12, RootMethod::Bisection);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoRoot);
    }
}

}  // TEST_SUITE
