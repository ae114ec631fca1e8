#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eup/grid.hpp"
#include "eup/model.hpp"
#include "eup/solver.hpp"

namespace eup {

/// Every closed-form constant of the existence, non-existence and
/// uniqueness statements, evaluated for one parameter set.
struct ThresholdSet {
  double eta_star = 0.0;      ///< existence threshold on eta0
  double m_bar = 0.0;         ///< upper bound on the hole field
  double c_bound = 0.0;       ///< bound on the first-integral constant
  double g_bar = 0.0;         ///< electron cap entering the non-existence proof
  double b_star = 0.0;        ///< doping bump level that excludes subsonic solutions
  double alpha = 0.0;         ///< bump window start
  double beta = 0.0;          ///< bump window end
  double j_theta_threshold = 0.0;  ///< smallness bound on j * theta for uniqueness
  double c1 = 0.0;            ///< L1 equivalence constant of the hole potential
  double c2 = 0.0;            ///< pointwise ratio bound of the hole potential
};

/// Existence threshold eta* from the regularized a-priori bounds:
///   Phi(eta*; 1) = Phi(m_lower + 3; 1) + 4 (1 - eps0) theta - 8 ln eps0
///                + Phi(m_lower + B_upper + 2 theta + 5; k) - k/2.
double existence_threshold(double m_lower, double B_upper, double theta, double epsilon0,
                           double k);

/// Upper hole bound m_bar:
///   Phi(m_bar; 1) = Phi(eta0; 1) + 4 (1 - eps0) theta - 12 ln eps0.
double hole_upper_bound(double eta0, double theta, double epsilon0);

/// Bound on |c|: 2 eps0 theta - 8 eps0 ln(eps0) / (1 - eps0).
double first_integral_bound(double theta, double epsilon0);

/// Electron cap g_bar:
///   Phi(g_bar; 1) = Phi(eta_bar; 1) + 1/2 + theta j - 4 ln eps0.
double electron_density_cap(double eta_bar, double theta, double epsilon0, double j = 1.0);

/// Doping level above which no subsonic solution exists when eta0 < eta_bar:
///   B* = 4 eps0 (3 eps0 + 1)/(1 - eps0)^2 Phi(g_bar; 1)
///      + eps0 (3 eps0 + 1)/(1 - eps0) theta + 4 (g_bar + 2)/(1 - eps0).
double doping_threshold(double eta_bar, double theta, double epsilon0, double j = 1.0);

/// Bump window (alpha, beta) = (eps0 + (1-eps0)/4, eps0 + 3(1-eps0)/4).
std::pair<double, double> bump_window(double epsilon0);

struct NecessaryCondition {
  bool pass = false;
  double margin = 0.0;  ///< Phi(g_bar) - max Phi(g); negative when violated
};

/// Any subsonic solution with eta0 < eta_bar must keep max Phi(g) below
/// Phi(g_bar); failing this certifies the candidate is not such a solution.
NecessaryCondition subsonic_necessary_condition(const SolutionFields& solution,
                                                double eta_bar, double theta,
                                                double epsilon0, double j = 1.0);

/// Smallness bound on j/tau for uniqueness:
///   min{ (-c2 + sqrt(c2 (c1 + c2))) / (4 c1 c2), 1 / (8 c1 c2^2) }.
double uniqueness_smallness_threshold(double c1, double c2);

struct PotentialConditioning {
  double c1 = 1.0;
  double c2 = 1.0;
};

/// Mean-value constants of the hole potential F = Phi(.; j^2) over [a, b]:
/// both equal max(max 1/F', max F') located analytically (F' is unimodal).
PotentialConditioning density_potential_conditioning(double a, double b, double j);

/// Full set evaluated at one parameter point; eta_star uses weight k,
/// the headline value being k = 1.
ThresholdSet make_thresholds(double m_lower, double B_upper, double eta0, double eta_bar,
                             double theta, double epsilon0, double j, double k = 1.0);

/// Max-norm gap of the frictionless exchange identity
///   [Phi(g1) - Phi(g2)] + [Phi(m1) - Phi(m2)] = 0
/// between two solutions of the same theta = 0 problem.
double frictionless_identity_gap(const SolutionFields& a, const SolutionFields& b);

enum class CellStatus { Exists, NotFound, Inconclusive };

struct ScanCell {
  double eta0 = 0.0;
  double bump_level = 0.0;
  CellStatus status = CellStatus::NotFound;
  double residual = 0.0;         // best (smallest) final max-norm residual
  double min_interior_g = 0.0;   // from the best attempt
  double min_m = 0.0;
  double c_value = 0.0;
};

struct ScanResult {
  std::vector<double> eta0_values, bump_levels;
  std::vector<ScanCell> cells;  // row-major over (eta0, bump)
};

/// Existence map over an (eta0, bump level) lattice. Each cell runs a
/// fixed number of multistart seeds; bump doping replaces the template
/// profile on the bump window. Deterministic given the seed.
ScanResult phase_scan(const ProblemSpec& tmpl, const std::vector<double>& eta0_values,
                      const std::vector<double>& bump_levels, const Grid& grid, double k,
                      const NewtonOptions& opts, std::uint64_t seed, int seeds_per_cell = 3,
                      int threads = 1);

std::string to_string(CellStatus s);

}  // namespace eup
