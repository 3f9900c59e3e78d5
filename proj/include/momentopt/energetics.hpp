#pragma once

#include <cstdint>
#include <vector>

#include "momentopt/model.hpp"

namespace momentopt {

enum class EnergyDomain {
    // The support [p*, R1] of the density.
    Support,
    // The whole annulus; the density vanishes with zero gradient on [R2, p*).
    FullAnnulus,
};

/// omega int r^{n-1} g(r) u(r) dr.
double moment(const SolutionProfile& profile, const ProblemSpec& spec);
double moment(const TentProfile& tent, const ProblemSpec& spec);
/// Uses the same trapezoid weights as the LP objective.
double moment(const OracleResult& oracle, const ProblemSpec& spec);

/// I[w] = int (H(grad w) - g w) with H(gamma) = eps exp((|gamma|^2 - alpha^2) / (2 eps)),
/// evaluated from the du column.
double primal_energy(const SolutionProfile& profile, const ProblemSpec& spec, EnergyDomain domain);

/// Xi(u, zeta) = int (Phi(u) zeta - Psi*(zeta) - g u) on the support, with
/// Phi(u) = (u'^2 - alpha^2) / (2 eps), zeta = eps lambda and
/// Psi*(zeta) = zeta (ln(zeta / eps) - 1), computed term by term.
double total_complementary(const SolutionProfile& profile, const ProblemSpec& spec);

/// I_d(zeta) = -1/2 int (theta^2 / lambda + alpha^2 lambda + 2 eps lambda (ln lambda - 1)).
double dual_energy(const SolutionProfile& profile, const ProblemSpec& spec);

/// Euler-Lagrange residual of the (u, du) pair. Two parts, the larger is returned:
///  - divergence form: central differences of r^{n-1} lambda du against
///    -r^{n-1} g(r), relative, sup over interior nodes;
///  - u consistency: sup |u - int_{R1}^r du| / sup|u|, so that du really is u'.
double el_residual(const SolutionProfile& profile, const ProblemSpec& spec);
double el_divergence_residual(const SolutionProfile& profile, const ProblemSpec& spec);
double derivative_consistency_residual(const SolutionProfile& profile);

/// sup |(du^2 - alpha^2) / (2 eps) - ln lambda|. Nodes whose lambda is below
/// the smallest normal double (xi = -inf, profiles read from text) only need
/// (du^2 - alpha^2) / (2 eps) <= ln(DBL_MIN).
double constitutive_residual(const SolutionProfile& profile, const ProblemSpec& spec);

struct ConstraintResiduals {
    double boundary = 0.0;        // max(|u(p*)|, |u(R1)|)
    double min_u = 0.0;           // smallest density value
    double normalization = 0.0;   // |mass - 1|
    double gradient_excess = 0.0; // max(0, sup|u'| - alpha)
};

ConstraintResiduals constraint_report(const SolutionProfile& profile, const ProblemSpec& spec);
ConstraintResiduals constraint_report(const TentProfile& tent, const ProblemSpec& spec);

/// Energies, gap, moment and residuals in one record.
EnergyReport duality_report(const SolutionProfile& profile, const ProblemSpec& spec);

/// phi(r) = sum_k b_k sin(k pi (r - a) / (b - a)), k = 1..K.
class TestFunction {
public:
    TestFunction(double a, double b, std::vector<double> coefficients);

    /// Unit-normal coefficients from a seeded mt19937_64.
    static TestFunction random(double a, double b, std::uint64_t seed, int terms = 16);

    double value(double r) const;
    double derivative(double r) const;

    TestFunction scaled(double factor) const;
    const std::vector<double>& coefficients() const { return coefficients_; }

private:
    double a_;
    double b_;
    std::vector<double> coefficients_;
};

/// omega int r^{n-1} lambda (du^2 phi'^2 / eps + phi'^2) dr; never negative.
double second_variation_primal(const SolutionProfile& profile, const TestFunction& phi,
                               const ProblemSpec& spec);

/// -omega int r^{n-1} (eps theta^2 psi^2 / zeta^3 + psi^2 / zeta) dr with
/// zeta = eps lambda; never positive. Becomes -inf once lambda underflows.
double second_variation_dual(const SolutionProfile& profile, const TestFunction& psi,
                             const ProblemSpec& spec);

}  // namespace momentopt
