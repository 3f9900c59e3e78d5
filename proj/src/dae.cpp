#include "momentopt/dae.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "momentopt/errors.hpp"

namespace momentopt {

namespace {

constexpr double kInvertTol = 1e-13;
constexpr double kClampRel = 1e-12;

// alpha^2 + 2 eps t, snapped to zero within a few ulps of the lower endpoint.
double bracket_term(double t, const DaeParams& p) {
    const double a2 = p.alpha * p.alpha;
    const double b = a2 + 2.0 * p.epsilon * t;
    if (b <= 8.0 * std::numeric_limits<double>::epsilon() * a2) return 0.0;
    return b;
}

double log_of_lambda(double lambda, const DaeParams& p) {
    const double t_min = p.t_min();
    if (!(lambda > 0.0) || !(lambda <= 1.0 + kClampRel)) {
        throw Error(ErrorKind::DomainError,
                    "dae: lambda outside (0, 1]: " + std::to_string(lambda));
    }
    const double t = std::log(lambda);
    if (t < t_min - kClampRel * std::max(1.0, -t_min)) {
        throw Error(ErrorKind::DomainError,
                    "dae: lambda below exp(-alpha^2/(2 eps)): " + std::to_string(lambda));
    }
    return std::clamp(t, t_min, 0.0);
}

double checked_log(double t, const DaeParams& p) {
    const double t_min = p.t_min();
    const double tol = kClampRel * std::max(1.0, -t_min);
    if (!(t >= t_min - tol && t <= tol)) {
        throw Error(ErrorKind::DomainError, "dae: ln(lambda) outside [t_min, 0]");
    }
    return std::clamp(t, t_min, 0.0);
}

// Residual of 2t + ln(alpha^2 + 2 eps t) = ln q; -inf at and below t_min.
double residual(double t, double log_q, const DaeParams& p) {
    const double b = p.alpha * p.alpha + 2.0 * p.epsilon * t;
    if (b <= 0.0) return -std::numeric_limits<double>::infinity();
    return 2.0 * t + std::log(b) - log_q;
}

}  // namespace

DaeParams DaeParams::make(double alpha, double epsilon) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::BadConfig, "dae: alpha must be positive");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::BadConfig, "dae: epsilon must be positive");
    }
    return DaeParams{alpha, epsilon};
}

double e_forward_log(double t, const DaeParams& params) {
    t = checked_log(t, params);
    return std::exp(2.0 * t) * bracket_term(t, params);
}

double e_forward(double lambda, const DaeParams& params) {
    return e_forward_log(log_of_lambda(lambda, params), params);
}

double e_invert_log_unchecked(double q, const DaeParams& p) noexcept {
    const double t_min = p.t_min();
    const double a2 = p.alpha * p.alpha;
    if (q <= 0.0) return t_min;
    if (q >= a2) return 0.0;

    const double log_q = std::log(q);
    double lo = std::max(t_min, 0.5 * (log_q - std::log(a2)));
    double hi = 0.0;
    for (int sweep = 0; sweep < 6 && hi - lo > kInvertTol; ++sweep) {
        const double b_lo = a2 + 2.0 * p.epsilon * lo;
        if (!(b_lo > 0.0)) break;
        hi = std::min(hi, 0.5 * (log_q - std::log(b_lo)));
        const double b_hi = a2 + 2.0 * p.epsilon * hi;
        lo = std::max(lo, 0.5 * (log_q - std::log(b_hi)));
    }
    // The bounds are exact in real arithmetic; widen by a few ulps and confirm
    // the sign change before trusting them.
    const double pad = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(lo));
    lo = std::max(t_min, std::min(lo, hi) - pad);
    hi = std::min(0.0, std::max(lo, hi) + pad);
    if (residual(lo, log_q, p) > 0.0 || residual(hi, log_q, p) < 0.0) {
        lo = t_min;
        hi = 0.0;
    }
    while (hi - lo > kInvertTol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (residual(mid, log_q, p) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double e_invert_log(double q, const DaeParams& params) {
    const double a2 = params.alpha * params.alpha;
    if (!(q >= 0.0)) {
        throw Error(ErrorKind::DomainError, "dae: |theta|^2 must be nonnegative");
    }
    if (q > a2 * (1.0 + kClampRel)) {
        throw Error(ErrorKind::FluxExceedsBound,
                    "dae: |theta|^2 = " + std::to_string(q) + " exceeds alpha^2 = " +
                        std::to_string(a2));
    }
    return e_invert_log_unchecked(std::min(q, a2), params);
}

double e_invert(double q, const DaeParams& params) {
    const double t = e_invert_log(q, params);
    if (t == 0.0) return 1.0;
    return std::exp(t);
}

double slope_from_log_unchecked(double t, const DaeParams& params) noexcept {
    return std::sqrt(bracket_term(t, params));
}

double slope_from_log(double t, const DaeParams& params) {
    return slope_from_log_unchecked(checked_log(t, params), params);
}

double slope_from_lambda(double lambda, const DaeParams& params) {
    return slope_from_log_unchecked(log_of_lambda(lambda, params), params);
}

double expansion_remainder(double lambda, const DaeParams& params) {
    const double t = log_of_lambda(lambda, params);
    const double l = std::exp(t);
    const double eps = params.epsilon;
    // E - (a^2 - 2 eps) l^2 - 2 eps l^3 = 2 eps l^2 (ln l - l + 1); the factored
    // form avoids cancelling two O(alpha^2) terms.
    return 2.0 * eps * l * l * (t - l + 1.0);
}

}  // namespace momentopt
