#include "momentopt/kernels.hpp"

#include <cmath>

#include "momentopt/errors.hpp"

namespace momentopt {

namespace {

inline double flux_sq(const SlopeFieldInput& in, std::size_t i) {
    const double theta = (in.c - in.antiderivative[i]) / in.radial_power[i];
    return theta * theta;
}

inline void evaluate_node(const SlopeFieldInput& in, SlopeFieldOutput& out, std::size_t i,
                          double a2) {
    const double d = in.c - in.antiderivative[i];
    double q = flux_sq(in, i);
    if (q > a2) q = a2;
    const double t = e_invert_log_unchecked(q, in.dae);
    out.log_lambda[i] = t;
    const double s = slope_from_log_unchecked(t, in.dae);
    out.slope[i] = d < 0.0 ? -s : s;
}

void check_sizes(const SlopeFieldInput& in, const SlopeFieldOutput& out) {
    const std::size_t n = in.radial_power.size();
    if (in.antiderivative.size() != n || out.log_lambda.size() != n || out.slope.size() != n) {
        throw Error(ErrorKind::BadConfig, "slope field: mismatched array sizes");
    }
}

SlopeFieldStatus scan_flux(const SlopeFieldInput& in) {
    SlopeFieldStatus st;
    for (std::size_t i = 0; i < in.radial_power.size(); ++i) {
        const double q = flux_sq(in, i);
        if (q > st.max_flux_sq) {
            st.max_flux_sq = q;
            st.worst_index = i;
        }
    }
    return st;
}

}  // namespace

SlopeFieldStatus evaluate_slope_field_serial(const SlopeFieldInput& in, SlopeFieldOutput out) {
    check_sizes(in, out);
    const double a2 = in.dae.alpha * in.dae.alpha;
    const std::size_t n = in.radial_power.size();
    for (std::size_t i = 0; i < n; ++i) evaluate_node(in, out, i, a2);
    return scan_flux(in);
}

SlopeFieldStatus evaluate_slope_field_parallel(const SlopeFieldInput& in, SlopeFieldOutput out) {
    check_sizes(in, out);
    const double a2 = in.dae.alpha * in.dae.alpha;
    const auto n = static_cast<std::ptrdiff_t>(in.radial_power.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        evaluate_node(in, out, static_cast<std::size_t>(i), a2);
    }
    return scan_flux(in);
}

SlopeFieldStatus evaluate_slope_field(const SlopeFieldInput& in, SlopeFieldOutput out,
                                      bool parallel) {
    return parallel ? evaluate_slope_field_parallel(in, out)
                    : evaluate_slope_field_serial(in, out);
}

}  // namespace momentopt
