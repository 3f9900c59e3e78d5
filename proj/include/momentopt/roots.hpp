#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "momentopt/errors.hpp"

namespace momentopt {

enum class RootMethod {
    Bisection,
    // Regula falsi with the Illinois halving; keeps a sign-changing bracket at
    // every step, so it is as safe as bisection on continuous monotone maps.
    Illinois,
};

struct BracketStep {
    double lo;
    double hi;
};

struct RootResult {
    double root = 0.0;
    // Final bracket; f(lo) and f(hi) keep the signs of the initial f_lo, f_hi.
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
    std::vector<BracketStep> history;
};

/// Finds a zero of f inside [lo, hi] given f(lo) and f(hi) of opposite sign
/// (either may be zero). Stops when the bracket is no wider than xtol.
template <class F>
RootResult find_root(F&& f, double lo, double hi, double f_lo, double f_hi, double xtol,
                     RootMethod method, int max_iter = 400) {
    RootResult res;
    if (f_lo == 0.0 || f_hi == 0.0) {
        res.root = f_lo == 0.0 ? lo : hi;
        res.lo = res.hi = res.root;
        return res;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw Error(ErrorKind::NoRoot, "find_root: bracket has no sign change");
    }
    int side = 0;
    int slow_steps = 0;
    while (hi - lo > xtol && res.iterations < max_iter) {
        const double width = hi - lo;
        double x = 0.5 * (lo + hi);
        if (method == RootMethod::Illinois && slow_steps < 2) {
            x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            const double step = 0.4 * xtol;
            if (!(x > lo + step)) x = lo + step;
            if (!(x < hi - step)) x = hi - step;
        }
        if (x <= lo || x >= hi) break;
        const double fx = f(x);
        ++res.iterations;
        if (fx == 0.0) {
            res.root = res.lo = res.hi = x;
            res.history.push_back({x, x});
            return res;
        }
        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = fx;
            if (side == -1) f_hi *= 0.5;
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if (side == +1) f_lo *= 0.5;
            side = +1;
        }
        res.history.push_back({lo, hi});
        // Fall back to a bisection step whenever two interpolation steps in a
        // row failed to halve the bracket.
        if (hi - lo > 0.5 * width) {
            ++slow_steps;
        } else {
            slow_steps = 0;
        }
        if (slow_steps > 2) slow_steps = 0;
    }
    res.root = 0.5 * (lo + hi);
    res.lo = lo;
    res.hi = hi;
    return res;
}

}  // namespace momentopt
