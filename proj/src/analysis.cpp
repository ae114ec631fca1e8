#include "eup/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

namespace eup {

double existence_threshold(double m_lower, double B_upper, double theta, double epsilon0,
                           double k) {
  if (!(m_lower > 1.0)) throw std::invalid_argument("existence threshold: m_lower <= 1");
  if (!(B_upper >= 0.0)) throw std::invalid_argument("existence threshold: B_upper < 0");
  if (!(k > 0.0 && k <= 1.0)) throw std::invalid_argument("existence threshold: bad k");
  const double target = flow_potential(m_lower + 3.0, 1.0) + 4.0 * (1.0 - epsilon0) * theta -
                        8.0 * std::log(epsilon0) +
                        flow_potential(m_lower + B_upper + 2.0 * theta + 5.0, k) - 0.5 * k;
  return invert_flow_potential(target, 1.0);
}

double hole_upper_bound(double eta0, double theta, double epsilon0) {
  if (!(eta0 > 1.0)) throw std::invalid_argument("hole upper bound: eta0 <= 1");
  const double target = flow_potential(eta0, 1.0) + 4.0 * (1.0 - epsilon0) * theta -
                        12.0 * std::log(epsilon0);
  return invert_flow_potential(target, 1.0);
}

double first_integral_bound(double theta, double epsilon0) {
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0))
    throw std::invalid_argument("first integral bound: epsilon0 outside (0, 1)");
  return 2.0 * epsilon0 * theta - 8.0 * epsilon0 * std::log(epsilon0) / (1.0 - epsilon0);
}

double electron_density_cap(double eta_bar, double theta, double epsilon0, double j) {
  if (!(eta_bar > 1.0)) throw std::invalid_argument("electron cap: eta_bar <= 1");
  const double target = flow_potential(eta_bar, 1.0) + 0.5 + theta * j -
                        4.0 * std::log(epsilon0);
  return invert_flow_potential(target, 1.0);
}

double doping_threshold(double eta_bar, double theta, double epsilon0, double j) {
  const double gbar = electron_density_cap(eta_bar, theta, epsilon0, j);
  const double one_m = 1.0 - epsilon0;
  return (3.0 * epsilon0 + 1.0) * 4.0 * epsilon0 / (one_m * one_m) *
             flow_potential(gbar, 1.0) +
         (3.0 * epsilon0 + 1.0) * epsilon0 / one_m * theta + 4.0 * (gbar + 2.0) / one_m;
}

std::pair<double, double> bump_window(double epsilon0) {
  return {epsilon0 + (1.0 - epsilon0) / 4.0, epsilon0 + 3.0 * (1.0 - epsilon0) / 4.0};
}

NecessaryCondition subsonic_necessary_condition(const SolutionFields& solution,
                                                double eta_bar, double theta,
                                                double epsilon0, double j) {
  const double cap = flow_potential(electron_density_cap(eta_bar, theta, epsilon0, j), 1.0);
  double mx = -std::numeric_limits<double>::infinity();
  for (double g : solution.g) mx = std::max(mx, flow_potential(g, 1.0));
  NecessaryCondition out;
  out.margin = cap - mx;
  out.pass = mx < cap;
  return out;
}

double uniqueness_smallness_threshold(double c1, double c2) {
  if (!(c1 >= 1.0 && c2 >= 1.0))
    throw std::invalid_argument("uniqueness threshold: constants must be >= 1");
  const double root = (-c2 + std::sqrt(c2 * (c1 + c2))) / (4.0 * c1 * c2);
  const double cap = 1.0 / (8.0 * c1 * c2 * c2);
  return std::min(root, cap);
}

PotentialConditioning density_potential_conditioning(double a, double b, double j) {
  if (!(a > 1.0) || !(a > j) || !(b >= a))
    throw std::invalid_argument("potential conditioning: need b >= a > max(1, j)");
  // F'(h) = (h^2 - j^2)/h^3 is unimodal with its maximum at h = sqrt(3) j,
  // so extrema over [a, b] sit at the endpoints (and the interior peak).
  const double fa = flow_potential_slope(a, j * j);
  const double fb = flow_potential_slope(b, j * j);
  double fmax = std::max(fa, fb);
  const double peak = std::sqrt(3.0) * j;
  if (peak > a && peak < b) fmax = std::max(fmax, flow_potential_slope(peak, j * j));
  const double fmin = std::min(fa, fb);
  const double c = std::max({fmax, 1.0 / fmin, 1.0});
  return {c, c};
}

ThresholdSet make_thresholds(double m_lower, double B_upper, double eta0, double eta_bar,
                             double theta, double epsilon0, double j, double k) {
  ThresholdSet t;
  t.eta_star = existence_threshold(m_lower, B_upper, theta, epsilon0, k);
  t.m_bar = hole_upper_bound(eta0, theta, epsilon0);
  t.c_bound = first_integral_bound(theta, epsilon0);
  t.g_bar = electron_density_cap(eta_bar, theta, epsilon0, j);
  t.b_star = doping_threshold(eta_bar, theta, epsilon0, j);
  const auto [alpha, beta] = bump_window(epsilon0);
  t.alpha = alpha;
  t.beta = beta;
  const PotentialConditioning pc =
      density_potential_conditioning(m_lower + 3.0, t.m_bar, j);
  t.c1 = pc.c1;
  t.c2 = pc.c2;
  t.j_theta_threshold = uniqueness_smallness_threshold(pc.c1, pc.c2);
  return t;
}

double frictionless_identity_gap(const SolutionFields& a, const SolutionFields& b) {
  if (a.r.size() != b.r.size() || a.r.front() != b.r.front() || a.r.back() != b.r.back())
    throw std::invalid_argument("identity gap: solutions on different grids");
  double mx = 0.0;
  for (std::size_t i = 0; i < a.r.size(); ++i) {
    const double lhs = flow_potential(a.g[i], 1.0) - flow_potential(b.g[i], 1.0);
    const double rhs = flow_potential(b.m[i], 1.0) - flow_potential(a.m[i], 1.0);
    mx = std::max(mx, std::abs(lhs - rhs));
  }
  return mx;
}

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Exists: return "exists";
    case CellStatus::NotFound: return "not-found";
    case CellStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

ScanResult phase_scan(const ProblemSpec& tmpl, const std::vector<double>& eta0_values,
                      const std::vector<double>& bump_levels, const Grid& grid, double k,
                      const NewtonOptions& opts, std::uint64_t seed, int seeds_per_cell,
                      int threads) {
  if (eta0_values.empty()) throw std::invalid_argument("phase scan: empty eta0 list");
  if (bump_levels.empty()) throw std::invalid_argument("phase scan: empty bump list");
  if (seeds_per_cell < 1) throw std::invalid_argument("phase scan: seeds_per_cell < 1");

  ScanResult out;
  out.eta0_values = eta0_values;
  out.bump_levels = bump_levels;
  const std::size_t n_cells = eta0_values.size() * bump_levels.size();
  out.cells.resize(n_cells);
  const auto [alpha, beta] = bump_window(tmpl.epsilon0);
  const double base = tmpl.doping.value(tmpl.epsilon0);

  const auto run_cell = [&](std::size_t idx) {
    const std::size_t ie = idx / out.bump_levels.size();
    const std::size_t ib = idx % out.bump_levels.size();
    ScanCell cell;
    cell.eta0 = out.eta0_values[ie];
    cell.bump_level = out.bump_levels[ib];

    ProblemSpec pr = tmpl;
    pr.eta0 = cell.eta0;
    pr.doping = DopingProfile::bump(base, cell.bump_level, alpha, beta);

    bool any_converged = false, any_flagged = false;
    double best_residual = std::numeric_limits<double>::infinity();
    for (int s = 0; s < seeds_per_cell; ++s) {
      const StateVector init = perturbed_state(
          pr, grid, k, seed, 0x5CA1ab1eull * (idx + 1) + static_cast<std::uint64_t>(s));
      SolveReport rep;
      try {
        rep = newton_solve(pr, k, grid, init, opts);
      } catch (const std::exception&) {
        continue;
      }
      if (rep.residual_max < best_residual) {
        best_residual = rep.residual_max;
        cell.residual = rep.residual_max;
        cell.min_interior_g = rep.diagnostics.min_interior_g;
        cell.min_m = rep.diagnostics.min_m;
        cell.c_value = rep.diagnostics.first_integral_c;
      }
      if (rep.converged)
        any_converged = true;
      else if (rep.failure_reason.rfind("inconclusive", 0) == 0)
        any_flagged = true;
    }
    cell.status = any_converged ? CellStatus::Exists
                  : any_flagged ? CellStatus::Inconclusive
                                : CellStatus::NotFound;
    out.cells[idx] = cell;
  };

  if (threads <= 1) {
    for (std::size_t i = 0; i < n_cells; ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n_cells);
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n_cells; i = next.fetch_add(1))
          run_cell(i);
      });
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace eup
