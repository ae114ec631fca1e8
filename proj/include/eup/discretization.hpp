#pragma once

#include <optional>
#include <vector>

#include "eup/bordered_matrix.hpp"
#include "eup/grid.hpp"
#include "eup/model.hpp"

namespace eup {

/// Discrete unknowns: g at interior nodes (boundary values g = 1 imposed),
/// m at interior nodes (m(epsilon0) = eta0 imposed), and m_end = m(1),
/// which couples to the nonlocal constraint row.
struct StateVector {
  std::vector<double> g_interior;
  std::vector<double> m_interior;
  double m_end = 0.0;

  /// Feasibility for regularization weight k: interior g > sqrt(k), all m > 1.
  /// Throws std::domain_error naming the offending node.
  void require_feasible(double k) const;
};

/// Optional manufactured source, subtracted from each residual row.
struct SourceTerm {
  std::vector<double> electron;  ///< one value per interior node
  std::vector<double> hole;      ///< one value per interior node
  double constraint = 0.0;
};

/// Discrete residual, ordered electron block, hole block, constraint.
///
/// Each row also carries a magnitude scale: the sum of absolute values of
/// the terms entering the row before cancellation (divided differences
/// expanded). Scaled comparisons against it make convergence tests
/// meaningful for solutions whose fields span many orders of magnitude.
struct Residual {
  std::vector<double> electron, hole;
  double constraint = 0.0;
  std::vector<double> electron_scale, hole_scale;
  double constraint_scale = 1.0;

  double max_abs() const;
  /// True when every row satisfies |R_i| <= tol * max(1, scale_i).
  bool within(double tol) const;
};

/// Assembles the residual of the regularized divergence-form system with
/// flux form at half nodes (arithmetic-mean coefficients) plus the integral
/// constraint row evaluated with the trapezoid rule.
Residual assemble_residual(const StateVector& state, const ProblemSpec& problem,
                           double k, const Grid& grid,
                           const SourceTerm* source = nullptr);

/// Exact analytic Jacobian of assemble_residual. Core unknowns are
/// interleaved [g_1, m_1, g_2, m_2, ...]; electron equation i maps to row
/// 2(i-1), hole equation i to row 2(i-1)+1, the constraint to the border.
BorderedBandMatrix assemble_jacobian(const StateVector& state,
                                     const ProblemSpec& problem, double k,
                                     const Grid& grid);

/// First integral constant c: zero exactly when the first-order and
/// divergence-form formulations agree. Same arithmetic path as the
/// constraint row, rescaled by epsilon0 / (1 - epsilon0).
double first_integral_constant(const StateVector& state, const ProblemSpec& problem,
                               const Grid& grid);

/// Max-norm residual of the summed momentum identity
///   (1/g - k/g^3) g_r + (1/m - j^2/m^3) m_r + theta j (1/g - 1/m) - 4/r = 0
/// evaluated with centered differences at interior nodes.
double momentum_identity_residual(const StateVector& state, const ProblemSpec& problem,
                                  double k, const Grid& grid);

struct WeakResiduals {
  double electron = 0.0;
  double hole = 0.0;
};

/// Weak-form residuals against every interior hat function, using the
/// (g-1)^2 flux form near the sonic boundary. Diagnoses how well a state
/// satisfies the unregularized weak formulation.
WeakResiduals weak_form_residual(const StateVector& state, const ProblemSpec& problem,
                                 const Grid& grid);

/// Derived physical fields for a state; E is recovered from centered
/// differences of g (one-sided second order at the endpoints).
SolutionFields make_solution_fields(const StateVector& state, const ProblemSpec& problem,
                                    const Grid& grid);

}  // namespace eup
