#pragma once

#include <string>
#include <vector>

namespace eup {

/// Flow regime of one species relative to the isothermal sound speed.
enum class FlowClass { Subsonic, Sonic, Supersonic };

/// Doping profile B(r) = r^2 b(r), evaluable on [epsilon0, 1].
///
/// Three shapes are supported: a constant level, a piecewise-linear
/// interpolant through breakpoints, and a step "bump" that takes the bump
/// level on [lo, hi) and the base level elsewhere. Values at breakpoints
/// follow the right-limit convention so evaluation is deterministic.
class DopingProfile {
 public:
  enum class Kind { Constant, PiecewiseLinear, Bump };

  static DopingProfile constant(double level);
  static DopingProfile piecewise_linear(std::vector<double> breakpoints,
                                        std::vector<double> values);
  static DopingProfile bump(double base, double level, double lo, double hi);

  double value(double r) const;
  Kind kind() const { return kind_; }
  double sup() const;  ///< least upper bound over the profile's range
  double inf() const;

  /// Validates the profile against the domain [epsilon0, 1].
  void validate(double epsilon0) const;

  // Introspection for serialization.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double bump_base() const { return base_; }
  double bump_level() const { return level_; }
  double bump_lo() const { return lo_; }
  double bump_hi() const { return hi_; }

 private:
  Kind kind_ = Kind::Constant;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double base_ = 0.0, level_ = 0.0, lo_ = 0.0, hi_ = 0.0;
};

/// All physical and boundary parameters of one boundary-value instance.
///
/// theta is the inverse relaxation time 1/tau; theta = 0 encodes tau =
/// infinity. The electron boundary values g(epsilon0) = g(1) = 1 are fixed
/// by the sonic boundary condition and are not parameters.
struct ProblemSpec {
  double epsilon0 = 0.5;  ///< inner radius, in (0,1)
  double theta = 1.0;     ///< 1/tau, >= 0
  double j = 1.0;         ///< current constant, in (0,1]
  double eta0 = 2.0;      ///< hole density boundary value m(epsilon0), > 1
  DopingProfile doping = DopingProfile::constant(1.0);
  double m_lower = 1.5;   ///< hole floor parameter used by threshold formulas, > 1

  void validate() const;  ///< throws std::invalid_argument naming the bad field
};

/// Discrete solution with derived physical fields.
struct SolutionFields {
  std::vector<double> r;    ///< node radii
  std::vector<double> g;    ///< r^2 * electron density at nodes
  std::vector<double> m;    ///< r^2 * hole density at nodes
  std::vector<double> E;    ///< electric field at nodes
  std::vector<double> rho;  ///< electron density g / r^2
  std::vector<double> n;    ///< hole density m / r^2
  std::vector<double> u;    ///< electron speed j / g
  std::vector<double> v;    ///< hole speed j / m
  double m_end = 0.0;       ///< m(1), pinned by the integral constraint
};

/// Phi(h; a) = ln h + a / (2 h^2), the isothermal flow potential.
///
/// a = 1 gives the electron potential at unit current, a = j^2 the hole
/// potential, and a = k its regularized variant.
double flow_potential(double h, double a);

/// d/dh of flow_potential: (h^2 - a) / h^3.
double flow_potential_slope(double h, double a);

/// Unique h >= 1 with flow_potential(h, a) = target, for a in [0, 1].
///
/// Bracketed bisection followed by a Newton polish; absolute tolerance
/// better than 1e-12. Throws std::domain_error when target < a/2 (no
/// solution on [1, inf)).
double invert_flow_potential(double target, double a);

/// Classifies a transformed density against the sonic value g = j.
/// Equality is taken with absolute tolerance 1e-14.
FlowClass classify_flow(double g_value, double j);

/// Electric field from the electron momentum balance:
/// E = (1/g - j^2/g^3) g_r + theta*j/g - 2/r.
double electric_field(double r, double g, double g_r, double theta, double j);

/// g = r^2 rho.
double scaled_density(double rho, double r);

/// rho = g / r^2.
double physical_density(double g, double r);

}  // namespace eup
