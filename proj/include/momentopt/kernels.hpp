#pragma once

#include <cstddef>
#include <span>

#include "momentopt/dae.hpp"

namespace momentopt {

/// Per-node inputs of the slope field: r_i^{n-1} and G(r_i).
struct SlopeFieldInput {
    std::span<const double> radial_power;  // r^{n-1}
    std::span<const double> antiderivative;  // G(r)
    double c = 0.0;
    DaeParams dae;
};

/// Per-node outputs: t = ln(lambda) and the signed slope
/// mu = sign(c - G) sqrt(alpha^2 + 2 eps t).
struct SlopeFieldOutput {
    std::span<double> log_lambda;
    std::span<double> slope;
};

/// Largest squared flux magnitude seen, so callers can raise FluxExceedsBound
/// outside the (possibly parallel) loop.
struct SlopeFieldStatus {
    double max_flux_sq = 0.0;
    std::size_t worst_index = 0;
};

/// Reference loop, one node at a time.
SlopeFieldStatus evaluate_slope_field_serial(const SlopeFieldInput& in, SlopeFieldOutput out);

/// OpenMP version of the same loop. Every node is computed by the same scalar
/// code, so results are bitwise identical to the serial loop.
SlopeFieldStatus evaluate_slope_field_parallel(const SlopeFieldInput& in, SlopeFieldOutput out);

/// Dispatch used by the solver; `parallel` selects the OpenMP loop.
SlopeFieldStatus evaluate_slope_field(const SlopeFieldInput& in, SlopeFieldOutput out,
                                      bool parallel);

}  // namespace momentopt
