#include "eup/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace eup {

namespace {

constexpr double kBlowUpGuard = 1e6;
constexpr double kCoefficientFloor = 1e-12;

struct RhsResult {
  std::array<double, 3> d;
  bool degenerate = false;
};

RhsResult rhs_checked(double r, double g, double m, double E, const ProblemSpec& pr,
                      double k) {
  RhsResult out{};
  const double ag = 1.0 / g - k / (g * g * g);
  const double bm = 1.0 / m - pr.j * pr.j / (m * m * m);
  if (std::abs(ag) < kCoefficientFloor || std::abs(bm) < kCoefficientFloor ||
      !(g > 0.0) || !(m > 0.0)) {
    out.degenerate = true;
    return out;
  }
  const double tj = pr.theta * pr.j;
  out.d[0] = (E - tj / g + 2.0 / r) / ag;
  out.d[1] = (-E + tj / m + 2.0 / r) / bm;
  out.d[2] = (g - m - pr.doping.value(r)) / (r * r) - 2.0 * E / r;
  return out;
}

}  // namespace

std::array<double, 3> first_order_rhs(double r, double g, double m, double E,
                                      const ProblemSpec& problem, double k) {
  if (!(r > 0.0)) throw std::domain_error("first_order_rhs: r must be positive");
  const RhsResult res = rhs_checked(r, g, m, E, problem, k);
  if (res.degenerate)
    throw std::domain_error("first_order_rhs: diffusion coefficient degenerate");
  return res.d;
}

Trajectory integrate_radial(double E0, const ProblemSpec& problem, double k, int steps) {
  if (steps < 100) throw std::invalid_argument("integrate: need at least 100 steps");
  if (!(k > 0.0 && k <= 1.0)) throw std::invalid_argument("integrate: k must lie in (0, 1]");
  const double r0 = problem.epsilon0;
  const double h = (1.0 - r0) / steps;

  Trajectory t;
  t.step = h;
  t.r.reserve(static_cast<std::size_t>(steps) + 1);
  t.g.reserve(t.r.capacity());
  t.m.reserve(t.r.capacity());
  t.E.reserve(t.r.capacity());

  std::array<double, 3> y{1.0, problem.eta0, E0};
  t.r.push_back(r0);
  t.g.push_back(y[0]);
  t.m.push_back(y[1]);
  t.E.push_back(y[2]);

  for (int i = 0; i < steps; ++i) {
    const double r = r0 + i * h;
    const RhsResult k1 = rhs_checked(r, y[0], y[1], y[2], problem, k);
    if (k1.degenerate) { t.status = TrajectoryStatus::CoefficientDegeneracy; return t; }
    const RhsResult k2 = rhs_checked(r + 0.5 * h, y[0] + 0.5 * h * k1.d[0],
                                     y[1] + 0.5 * h * k1.d[1], y[2] + 0.5 * h * k1.d[2],
                                     problem, k);
    if (k2.degenerate) { t.status = TrajectoryStatus::CoefficientDegeneracy; return t; }
    const RhsResult k3 = rhs_checked(r + 0.5 * h, y[0] + 0.5 * h * k2.d[0],
                                     y[1] + 0.5 * h * k2.d[1], y[2] + 0.5 * h * k2.d[2],
                                     problem, k);
    if (k3.degenerate) { t.status = TrajectoryStatus::CoefficientDegeneracy; return t; }
    const RhsResult k4 = rhs_checked(r + h, y[0] + h * k3.d[0], y[1] + h * k3.d[1],
                                     y[2] + h * k3.d[2], problem, k);
    if (k4.degenerate) { t.status = TrajectoryStatus::CoefficientDegeneracy; return t; }

    for (int c = 0; c < 3; ++c)
      y[static_cast<std::size_t>(c)] +=
          h / 6.0 * (k1.d[static_cast<std::size_t>(c)] + 2.0 * k2.d[static_cast<std::size_t>(c)] +
                     2.0 * k3.d[static_cast<std::size_t>(c)] + k4.d[static_cast<std::size_t>(c)]);
    t.r.push_back(i + 1 == steps ? 1.0 : r + h);
    t.g.push_back(y[0]);
    t.m.push_back(y[1]);
    t.E.push_back(y[2]);
    if (std::abs(y[0]) + std::abs(y[1]) + std::abs(y[2]) > kBlowUpGuard) {
      t.status = TrajectoryStatus::BlowUp;
      return t;
    }
    const double sk = std::sqrt(k);
    if (y[0] <= sk + kCoefficientFloor || y[1] <= problem.j + kCoefficientFloor) {
      t.status = TrajectoryStatus::CoefficientDegeneracy;
      return t;
    }
  }
  t.status = TrajectoryStatus::Completed;
  return t;
}

double shooting_mismatch(double E0, const ProblemSpec& problem, double k, int steps) {
  return integrate_radial(E0, problem, k, steps).final_g() - 1.0;
}

std::optional<std::pair<double, double>> find_bracket(const ProblemSpec& problem,
                                                      double k, int steps, double E_low,
                                                      double E_high, int samples,
                                                      bool* ambiguous) {
  if (!(E_low < E_high) || samples < 2)
    throw std::invalid_argument("find_bracket: bad search interval");
  std::optional<std::pair<double, double>> found;
  if (ambiguous) *ambiguous = false;
  double prevE = E_low;
  double prevf = shooting_mismatch(E_low, problem, k, steps);
  for (int i = 1; i < samples; ++i) {
    const double E = E_low + (E_high - E_low) * i / (samples - 1);
    const double f = shooting_mismatch(E, problem, k, steps);
    if (prevf == 0.0 || prevf * f < 0.0) {
      if (!found)
        found = {prevE, E};
      else if (ambiguous)
        *ambiguous = true;
    }
    prevE = E;
    prevf = f;
  }
  return found;
}

Trajectory shoot_match(const ProblemSpec& problem, double k, int steps, double E_low,
                       double E_high) {
  if (!(k > 0.0 && k <= 0.9))
    throw std::invalid_argument("shoot_match: oracle domain is k <= 0.9");
  double flo = shooting_mismatch(E_low, problem, k, steps);
  double fhi = shooting_mismatch(E_high, problem, k, steps);
  if (flo == 0.0) flo = -0.0;  // treat exact zero as the low side
  if (flo * fhi > 0.0)
    throw std::runtime_error("shoot_match: mismatch does not change sign over bracket");

  constexpr double kTol = 1e-10;
  double Em = 0.5 * (E_low + E_high);
  for (int it = 0; it < 200; ++it) {
    // secant proposal, bisection fallback
    Em = fhi != flo ? E_low + (E_high - E_low) * (-flo) / (fhi - flo)
                    : 0.5 * (E_low + E_high);
    if (!(Em > E_low && Em < E_high)) Em = 0.5 * (E_low + E_high);
    Trajectory traj = integrate_radial(Em, problem, k, steps);
    const double fm = traj.final_g() - 1.0;
    if (traj.status == TrajectoryStatus::Completed && std::abs(fm) < kTol) return traj;
    if (flo * fm <= 0.0) {
      E_high = Em;
      fhi = fm;
    } else {
      E_low = Em;
      flo = fm;
    }
    if (E_high - E_low < 1e-15 * std::max(1.0, std::abs(E_low)))
      throw std::runtime_error("shoot_match: bracket collapsed without matching");
  }
  throw std::runtime_error("shoot_match: iteration cap reached");
}

double trajectory_constraint_residual(const Trajectory& traj, const ProblemSpec& problem) {
  if (traj.status != TrajectoryStatus::Completed)
    throw std::invalid_argument("trajectory constraint: trajectory incomplete");
  double quad = 0.0;
  for (std::size_t i = 1; i < traj.r.size(); ++i) {
    const double fa = 1.0 / traj.g[i - 1] - 1.0 / traj.m[i - 1];
    const double fb = 1.0 / traj.g[i] - 1.0 / traj.m[i];
    quad += 0.5 * (fa + fb) * (traj.r[i] - traj.r[i - 1]);
  }
  return flow_potential(traj.m.back(), 1.0) - flow_potential(problem.eta0, 1.0) +
         problem.theta * problem.j * quad + 4.0 * std::log(problem.epsilon0);
}

}  // namespace eup
