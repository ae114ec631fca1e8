#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eup/discretization.hpp"
#include "eup/grid.hpp"
#include "eup/model.hpp"

namespace eup {

/// Damped-Newton controls. The convergence test is row-scaled: a row
/// converges when its residual is below tolerance times the row's term
/// magnitude (at least 1), which keeps the test meaningful both for O(1)
/// problems and for solutions spanning several orders of magnitude.
struct NewtonOptions {
  int max_iterations = 50;
  double tolerance = 1e-10;
  double backtrack_factor = 0.5;
  double min_step = 9.5367431640625e-7;  // 2^-20
  double floor_margin = 1e-12;           // safeguard: g >= sqrt(k)+margin, m >= 1+margin
};

/// Increasing sequence of regularization weights ending near 1.
struct ContinuationSchedule {
  std::vector<double> k_values;

  /// Default: k_i = 1 - (1 - k0) 2^{-i} capped with k_final as last entry.
  static ContinuationSchedule geometric(double k0 = 0.5, double k_final = 1.0 - 1e-6);
  void validate() const;
};

struct SolveDiagnostics {
  double first_integral_c = 0.0;
  double momentum_identity = 0.0;
  double weak_electron = 0.0;
  double weak_hole = 0.0;
  double min_interior_g = 0.0;
  double min_m = 0.0;
  double m_end = 0.0;
};

struct SolveReport {
  bool converged = false;
  std::string failure_reason;  // empty when converged
  int iterations = 0;
  double residual_max = 0.0;        // absolute max norm at the final iterate
  double residual_scaled = 0.0;     // max of |R_i| / max(1, scale_i)
  double k = 0.0;                   // regularization weight reported at
  StateVector state;                // final iterate (converged or not)
  SolutionFields solution;
  SolveDiagnostics diagnostics;
  // continuation extras
  std::vector<double> stage_min_interior_g;
  std::vector<int> stage_iterations;
  bool all_stages_converged = true;
};

enum class UniquenessVerdict { UniqueWithinTol, MultipleSolutions, Inconclusive };

struct UniquenessReport {
  int starts = 0;
  int converged = 0;
  double max_pairwise_g = 0.0;   // max-norm distance between converged g fields
  double max_pairwise_m = 0.0;
  double tol_g = 0.0;            // 1e-8 * (1 + max |g|), likewise for m
  double tol_m = 0.0;
  UniquenessVerdict verdict = UniquenessVerdict::Inconclusive;
  std::vector<SolveReport> runs;
};

/// Sine-bump initial guess: g = 1 + amplitude sin(pi s), m affine from eta0
/// to the closed-form theta = 0 value of the integral constraint.
StateVector initial_state(const ProblemSpec& problem, const Grid& grid,
                          double amplitude = 0.5);

/// Damped Newton on the bordered system. The initial state must be feasible
/// (assembly throws otherwise); trial steps are clipped to the safeguard
/// floors and convergence requires the final iterate to sit strictly above
/// them.
SolveReport newton_solve(const ProblemSpec& problem, double k, const Grid& grid,
                         const StateVector& init, const NewtonOptions& opts = {},
                         const SourceTerm* source = nullptr);

/// Warm-started continuation in k; returns the report at the final stage,
/// or the last successful report annotated with the failure.
SolveReport continuation_solve(const ProblemSpec& problem, const Grid& grid,
                               const ContinuationSchedule& schedule,
                               const NewtonOptions& opts = {});

enum class Endpoint { Inner, Outer };

struct HolderFit {
  double exponent = 0.0;
  double rms_residual = 0.0;
  int nodes = 0;
};

/// Least-squares slope of log(g - 1) against log(distance to the sonic
/// endpoint) over the window [2h, (1 - epsilon0)/8].
HolderFit holder_exponent_fit(const SolutionFields& solution, Endpoint end);

/// Largest nu >= 0 with g >= 1 + nu sin(pi (r - eps0)/(1 - eps0)) at all
/// interior nodes.
double sine_envelope_coefficient(const SolutionFields& solution);

/// Newton solves from deterministically perturbed initial states; verdict
/// is unique-within-tol when every converged pair agrees to 1e-8 relative
/// max norm in both fields.
UniquenessReport multistart_uniqueness(const ProblemSpec& problem, const Grid& grid,
                                       double k, int n_seeds, std::uint64_t seed,
                                       const NewtonOptions& opts = {}, int threads = 1);

/// Perturbed initial state for one multistart seed (exposed for reuse by
/// the phase scan).
StateVector perturbed_state(const ProblemSpec& problem, const Grid& grid, double k,
                            std::uint64_t seed, std::uint64_t salt);

}  // namespace eup
