#pragma once

// Test-only reimplementation of the radial construction, sharing no code with
// the library beyond ProblemSpec:
//  - the slope magnitude s = |u'| is solved directly from
//        2 ln s + (s^2 - alpha^2) / eps = ln q      (q = flux^2)
//    instead of inverting for ln(lambda);
//  - integrals use 20-point Gauss-Legendre on panels graded geometrically
//    toward the apex, instead of Simpson on a mapped grid;
//  - mass and moment use the single-integral forms obtained by swapping the
//    order of integration, so no density is ever tabulated.

#include "momentopt/model.hpp"

namespace indep {

struct Instance {
    int n = 2;
    double p = 2.0;  // power payoff only
    double alpha = 10.0;
    double r_inner = 1.0;
    double r_outer = 6.0;
    double epsilon = 0.1;

    static Instance from(const momentopt::ProblemSpec& spec);
};

double slope_magnitude(double flux_sq, const Instance& in);
double mismatch(double c, double a, const Instance& in);
double constant(double a, const Instance& in);
double mass(double a, const Instance& in);
double moment(double a, double c, const Instance& in);
double support(const Instance& in, double lo, double hi);
// u(r) = int_{R1}^r mu for the given c.
double density(double r, double c, const Instance& in);

}  // namespace indep
