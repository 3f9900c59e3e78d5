#pragma once

namespace momentopt {

/// Parameters of the dual algebraic equation
///     |theta|^2 = E(lambda) = lambda^2 (alpha^2 + 2 eps ln lambda),
/// strictly increasing from 0 to alpha^2 on lambda in [e^{t_min}, 1].
///
/// Everything is evaluated in t = ln(lambda): for small eps the lower end
/// e^{-alpha^2 / (2 eps)} underflows while t_min itself is an ordinary number.
struct DaeParams {
    double alpha = 1.0;
    double epsilon = 0.1;

    /// Throws BadConfig unless alpha > 0 and epsilon > 0.
    static DaeParams make(double alpha, double epsilon);

    double t_min() const { return -alpha * alpha / (2.0 * epsilon); }
};

double e_forward(double lambda, const DaeParams& params);
double e_forward_log(double t, const DaeParams& params);

/// Unique t = ln(lambda) in [t_min, 0] with E(e^t) = q.
///
/// Bisection on 2t + ln(alpha^2 + 2 eps t) = ln q. The starting bracket is
/// narrowed first with the monotone bounds
///     (ln q - ln alpha^2)/2 <= t*   and   t* <= (ln q - ln(alpha^2 + 2 eps t_lo))/2,
/// which are valid for any lower bound t_lo; bisection then runs to 1e-13 in t
/// (or to adjacent doubles when |t| is large). q in (alpha^2, alpha^2 (1 + 1e-12)]
/// is clamped to alpha^2.
double e_invert_log(double q, const DaeParams& params);
double e_invert(double q, const DaeParams& params);

/// Same inversion without argument checks; q must already lie in [0, alpha^2].
double e_invert_log_unchecked(double q, const DaeParams& params) noexcept;

/// |u'| = sqrt(E(lambda)) / lambda = sqrt(alpha^2 + 2 eps ln lambda).
double slope_from_lambda(double lambda, const DaeParams& params);
double slope_from_log(double t, const DaeParams& params);
double slope_from_log_unchecked(double t, const DaeParams& params) noexcept;

/// R(lambda) = E(lambda) - (alpha^2 - 2 eps) lambda^2 - 2 eps lambda^3, the
/// remainder of the expansion of E about lambda = 1. |R| <= eps on the range.
double expansion_remainder(double lambda, const DaeParams& params);

}  // namespace momentopt
