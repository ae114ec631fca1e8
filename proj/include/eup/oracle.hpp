#pragma once

#include <array>
#include <optional>
#include <vector>

#include "eup/model.hpp"

namespace eup {

/// Outcome of one radial integration of the first-order system.
enum class TrajectoryStatus { Completed, BlowUp, CoefficientDegeneracy };

/// Integrated (g, m, E) samples of the first-order system.
struct Trajectory {
  std::vector<double> r, g, m, E;
  double step = 0.0;
  TrajectoryStatus status = TrajectoryStatus::Completed;

  double final_g() const { return g.back(); }
  double final_m() const { return m.back(); }
};

/// Right side of the first-order system in (g, m, E):
///   g_r = (E - theta j / g + 2/r) / (1/g - k/g^3)
///   m_r = (-E + theta j / m + 2/r) / (1/m - j^2/m^3)
///   E_r = (g - m - B(r)) / r^2 - 2 E / r
/// Throws std::domain_error when a diffusion coefficient falls below 1e-12.
std::array<double, 3> first_order_rhs(double r, double g, double m, double E,
                                      const ProblemSpec& problem, double k);

/// Classical fixed-step RK4 from r = epsilon0 with g = 1, m = eta0,
/// E = E0. Terminates early on blow-up (|g| + |m| + |E| > 1e6) or
/// coefficient degeneracy.
Trajectory integrate_radial(double E0, const ProblemSpec& problem, double k, int steps);

/// Shooting mismatch: g - 1 at the end of the trajectory. Early-terminated
/// trajectories report the value where they stopped, which keeps the sign
/// information a bracketing search needs (g collapsing toward sqrt(k) reads
/// negative, g running away reads positive).
double shooting_mismatch(double E0, const ProblemSpec& problem, double k, int steps);

/// Scans [E_low, E_high] for the first sign change of the mismatch.
/// Returns the bracketing subinterval, or nullopt if none is found.
/// `ambiguous` (when non-null) reports whether further sign changes exist.
std::optional<std::pair<double, double>> find_bracket(const ProblemSpec& problem,
                                                      double k, int steps, double E_low,
                                                      double E_high, int samples = 65,
                                                      bool* ambiguous = nullptr);

/// Secant/bisection hybrid on E0 driving g(1) to 1 within 1e-10. The
/// bracket must straddle a sign change of the mismatch.
Trajectory shoot_match(const ProblemSpec& problem, double k, int steps, double E_low,
                       double E_high);

/// First-integral expression of the trajectory (trapezoid over its
/// samples); structurally zero for a matched trajectory.
double trajectory_constraint_residual(const Trajectory& traj, const ProblemSpec& problem);

}  // namespace eup
