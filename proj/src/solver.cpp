#include "eup/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "eup/rng.hpp"

namespace eup {

namespace {

double scaled_residual_max(const Residual& r) {
  double mx = std::abs(r.constraint) / std::max(1.0, r.constraint_scale);
  for (std::size_t i = 0; i < r.electron.size(); ++i)
    mx = std::max(mx, std::abs(r.electron[i]) / std::max(1.0, r.electron_scale[i]));
  for (std::size_t i = 0; i < r.hole.size(); ++i)
    mx = std::max(mx, std::abs(r.hole[i]) / std::max(1.0, r.hole_scale[i]));
  return mx;
}

void fill_rhs(const Residual& r, std::vector<double>& core, double& border) {
  const std::size_t ni = r.electron.size();
  core.resize(2 * ni);
  for (std::size_t i = 0; i < ni; ++i) {
    core[2 * i] = -r.electron[i];
    core[2 * i + 1] = -r.hole[i];
  }
  border = -r.constraint;
}

StateVector clipped_step(const StateVector& x, const std::vector<double>& dir_core,
                         double dir_border, double alpha, double g_floor, double m_floor) {
  StateVector t = x;
  const std::size_t ni = t.g_interior.size();
  for (std::size_t i = 0; i < ni; ++i) {
    t.g_interior[i] = std::max(t.g_interior[i] + alpha * dir_core[2 * i], g_floor);
    t.m_interior[i] = std::max(t.m_interior[i] + alpha * dir_core[2 * i + 1], m_floor);
  }
  t.m_end = std::max(t.m_end + alpha * dir_border, m_floor);
  return t;
}

void populate_report(SolveReport& rep, const ProblemSpec& problem, double k,
                     const Grid& grid, const StateVector& state, const Residual& res) {
  rep.k = k;
  rep.state = state;
  rep.residual_max = res.max_abs();
  rep.residual_scaled = scaled_residual_max(res);
  rep.solution = make_solution_fields(state, problem, grid);
  rep.diagnostics.first_integral_c = first_integral_constant(state, problem, grid);
  rep.diagnostics.momentum_identity = momentum_identity_residual(state, problem, k, grid);
  const WeakResiduals w = weak_form_residual(state, problem, grid);
  rep.diagnostics.weak_electron = w.electron;
  rep.diagnostics.weak_hole = w.hole;
  rep.diagnostics.min_interior_g =
      *std::min_element(state.g_interior.begin(), state.g_interior.end());
  rep.diagnostics.min_m = std::min(
      {*std::min_element(state.m_interior.begin(), state.m_interior.end()),
       problem.eta0, state.m_end});
  rep.diagnostics.m_end = state.m_end;
}

}  // namespace

ContinuationSchedule ContinuationSchedule::geometric(double k0, double k_final) {
  if (!(k0 > 0.0 && k0 < k_final && k_final < 1.0))
    throw std::invalid_argument("continuation: need 0 < k0 < k_final < 1");
  ContinuationSchedule s;
  for (int i = 0;; ++i) {
    const double k = 1.0 - (1.0 - k0) * std::pow(2.0, -i);
    if (k >= k_final) break;
    s.k_values.push_back(k);
  }
  s.k_values.push_back(k_final);
  return s;
}

void ContinuationSchedule::validate() const {
  if (k_values.empty()) throw std::invalid_argument("continuation: empty schedule");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (!(k_values[i] > 0.0 && k_values[i] < 1.0))
      throw std::invalid_argument("continuation: k values must lie in (0, 1)");
    if (i > 0 && !(k_values[i] > k_values[i - 1]))
      throw std::invalid_argument("continuation: schedule must be strictly increasing");
  }
}

StateVector initial_state(const ProblemSpec& problem, const Grid& grid, double amplitude) {
  if (!(amplitude >= 0.0)) throw std::invalid_argument("initial state: amplitude < 0");
  const int N = grid.cells();
  const double eps0 = grid.epsilon0();
  StateVector s;
  s.g_interior.resize(static_cast<std::size_t>(N) - 1);
  s.m_interior.resize(static_cast<std::size_t>(N) - 1);
  // theta = 0 closed form of the constraint; consistent first guess otherwise
  const double target = flow_potential(problem.eta0, 1.0) - 4.0 * std::log(eps0);
  s.m_end = invert_flow_potential(target, 1.0);
  for (int i = 1; i < N; ++i) {
    const double t = (grid.node(i) - eps0) / (1.0 - eps0);
    s.g_interior[static_cast<std::size_t>(i) - 1] =
        1.0 + amplitude * std::sin(std::numbers::pi * t);
    s.m_interior[static_cast<std::size_t>(i) - 1] =
        problem.eta0 + (s.m_end - problem.eta0) * t;
  }
  return s;
}

SolveReport newton_solve(const ProblemSpec& problem, double k, const Grid& grid,
                         const StateVector& init, const NewtonOptions& opts,
                         const SourceTerm* source) {
  if (!(k > 0.0 && k < 1.0))
    throw std::invalid_argument("newton: k must lie in (0, 1)");
  problem.validate();
  const double g_floor = std::sqrt(k) + opts.floor_margin;
  const double m_floor = 1.0 + opts.floor_margin;

  SolveReport rep;
  StateVector x = init;
  Residual res = assemble_residual(x, problem, k, grid, source);  // throws if infeasible
  double merit = res.max_abs();

  std::vector<double> rhs_core;
  double rhs_border = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (res.within(opts.tolerance)) {
      rep.converged = true;
      break;
    }
    BorderedBandMatrix jac = assemble_jacobian(x, problem, k, grid);
    BorderedBandMatrix::Solution dir;
    try {
      jac.factor();
      fill_rhs(res, rhs_core, rhs_border);
      dir = jac.solve(rhs_core, rhs_border);
    } catch (const SingularMatrixError& e) {
      rep.iterations = it;
      rep.failure_reason = std::string("singular bordered factorization: ") + e.what();
      populate_report(rep, problem, k, grid, x, res);
      return rep;
    }
    bool accepted = false;
    for (double alpha = 1.0; alpha >= opts.min_step; alpha *= opts.backtrack_factor) {
      StateVector trial = clipped_step(x, dir.core, dir.border, alpha, g_floor, m_floor);
      Residual tres = assemble_residual(trial, problem, k, grid, source);
      if (tres.max_abs() < merit) {
        x = std::move(trial);
        res = std::move(tres);
        merit = res.max_abs();
        accepted = true;
        break;
      }
    }
    rep.iterations = it + 1;
    if (!accepted) {
      if (res.within(opts.tolerance))
        rep.converged = true;
      else
        rep.failure_reason = "line search stalled";
      break;
    }
    if (it + 1 == opts.max_iterations && !res.within(opts.tolerance))
      rep.failure_reason = "iteration cap reached";
  }
  if (rep.failure_reason.empty() && !rep.converged) {
    if (res.within(opts.tolerance))
      rep.converged = true;
    else
      rep.failure_reason = "iteration cap reached";
  }

  // Clipping must be inactive at the final iterate.
  if (rep.converged) {
    const double min_g =
        *std::min_element(x.g_interior.begin(), x.g_interior.end());
    const double min_m = std::min(
        *std::min_element(x.m_interior.begin(), x.m_interior.end()), x.m_end);
    if (min_g <= g_floor || min_m <= m_floor) {
      rep.converged = false;
      rep.failure_reason = "inconclusive: safeguard clipping active at the final iterate";
    }
  }
  populate_report(rep, problem, k, grid, x, res);
  return rep;
}

SolveReport continuation_solve(const ProblemSpec& problem, const Grid& grid,
                               const ContinuationSchedule& schedule,
                               const NewtonOptions& opts) {
  schedule.validate();
  StateVector x = initial_state(problem, grid);
  SolveReport last;
  bool have_last = false;
  std::vector<double> stage_min_g;
  std::vector<int> stage_its;
  for (double k : schedule.k_values) {
    SolveReport rep = newton_solve(problem, k, grid, x, opts);
    stage_min_g.push_back(rep.diagnostics.min_interior_g);
    stage_its.push_back(rep.iterations);
    if (!rep.converged) {
      if (!have_last) {
        rep.all_stages_converged = false;
        rep.stage_min_interior_g = stage_min_g;
        rep.stage_iterations = stage_its;
        return rep;
      }
      last.all_stages_converged = false;
      last.failure_reason = "continuation failed at k = " + std::to_string(k) + ": " +
                            rep.failure_reason;
      last.stage_min_interior_g = stage_min_g;
      last.stage_iterations = stage_its;
      return last;
    }
    x = rep.state;
    last = std::move(rep);
    have_last = true;
  }
  last.all_stages_converged = true;
  last.stage_min_interior_g = std::move(stage_min_g);
  last.stage_iterations = std::move(stage_its);
  return last;
}

HolderFit holder_exponent_fit(const SolutionFields& solution, Endpoint end) {
  const std::size_t n = solution.r.size();
  if (n < 4) throw std::invalid_argument("holder fit: solution too small");
  const double eps0 = solution.r.front();
  const double h = solution.r[1] - solution.r[0];
  const double win_lo = 2.0 * h;
  const double win_hi = (1.0 - eps0) / 8.0;

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = end == Endpoint::Inner ? solution.r[i] - eps0 : 1.0 - solution.r[i];
    if (x < win_lo - 1e-14 || x > win_hi + 1e-14) continue;
    if (!(solution.g[i] > 1.0)) continue;
    lx.push_back(std::log(x));
    ly.push_back(std::log(solution.g[i] - 1.0));
  }
  if (lx.size() < 4) throw std::invalid_argument("holder fit: too few nodes in window");

  const double nn = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / nn;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (slope * lx[i] + icpt);
    ss += e * e;
  }
  HolderFit fit;
  fit.exponent = slope;
  fit.rms_residual = std::sqrt(ss / nn);
  fit.nodes = static_cast<int>(lx.size());
  return fit;
}

double sine_envelope_coefficient(const SolutionFields& solution) {
  const std::size_t n = solution.r.size();
  const double eps0 = solution.r.front();
  double nu = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s =
        std::sin(std::numbers::pi * (solution.r[i] - eps0) / (1.0 - eps0));
    if (s <= 0.0) continue;
    nu = std::min(nu, (solution.g[i] - 1.0) / s);
  }
  return std::max(nu, 0.0);
}

StateVector perturbed_state(const ProblemSpec& problem, const Grid& grid, double k,
                            std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 rng = SplitMix64::stream(seed, salt);
  const double amplitude = 0.1 + 1.4 * rng.uniform();
  StateVector s = initial_state(problem, grid, amplitude);
  // Low-frequency perturbations, clipped back to feasibility.
  const double c2 = 0.2 * amplitude * (2.0 * rng.uniform() - 1.0) / 2.0;
  const double c3 = 0.2 * amplitude * (2.0 * rng.uniform() - 1.0) / 3.0;
  const double c4 = 0.2 * amplitude * (2.0 * rng.uniform() - 1.0) / 4.0;
  const double mshift = 0.3 * (2.0 * rng.uniform() - 1.0);
  const double g_floor = std::sqrt(k) + 1e-9;
  const int N = grid.cells();
  for (int i = 1; i < N; ++i) {
    const double t = (grid.node(i) - grid.epsilon0()) / (1.0 - grid.epsilon0());
    const std::size_t is = static_cast<std::size_t>(i) - 1;
    double dg = c2 * std::sin(2 * std::numbers::pi * t) +
                c3 * std::sin(3 * std::numbers::pi * t) +
                c4 * std::sin(4 * std::numbers::pi * t);
    s.g_interior[is] = std::max(s.g_interior[is] + dg, g_floor);
    s.m_interior[is] = std::max(
        s.m_interior[is] * (1.0 + mshift * std::sin(std::numbers::pi * t)), 1.0 + 1e-9);
  }
  return s;
}

UniquenessReport multistart_uniqueness(const ProblemSpec& problem, const Grid& grid,
                                       double k, int n_seeds, std::uint64_t seed,
                                       const NewtonOptions& opts, int threads) {
  if (n_seeds < 1) throw std::invalid_argument("multistart: need at least one seed");
  UniquenessReport rep;
  rep.starts = n_seeds;
  rep.runs.resize(static_cast<std::size_t>(n_seeds));

  const auto run_one = [&](int s) {
    const StateVector init =
        perturbed_state(problem, grid, k, seed, static_cast<std::uint64_t>(s));
    rep.runs[static_cast<std::size_t>(s)] = newton_solve(problem, k, grid, init, opts);
  };
  if (threads <= 1) {
    for (int s = 0; s < n_seeds; ++s) run_one(s);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int nt = std::min(threads, n_seeds);
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (int s = next.fetch_add(1); s < n_seeds; s = next.fetch_add(1)) run_one(s);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<const SolveReport*> ok;
  for (const auto& r : rep.runs)
    if (r.converged) ok.push_back(&r);
  rep.converged = static_cast<int>(ok.size());
  if (ok.size() < 2) {
    rep.verdict = UniquenessVerdict::Inconclusive;
    return rep;
  }
  double gmax = 0.0, mmax = 0.0;
  for (const auto* r : ok) {
    for (double v : r->solution.g) gmax = std::max(gmax, std::abs(v));
    for (double v : r->solution.m) mmax = std::max(mmax, std::abs(v));
  }
  rep.tol_g = 1e-8 * (1.0 + gmax);
  rep.tol_m = 1e-8 * (1.0 + mmax);
  for (std::size_t a = 0; a < ok.size(); ++a)
    for (std::size_t b = a + 1; b < ok.size(); ++b) {
      for (std::size_t i = 0; i < ok[a]->solution.g.size(); ++i) {
        rep.max_pairwise_g = std::max(
            rep.max_pairwise_g, std::abs(ok[a]->solution.g[i] - ok[b]->solution.g[i]));
        rep.max_pairwise_m = std::max(
            rep.max_pairwise_m, std::abs(ok[a]->solution.m[i] - ok[b]->solution.m[i]));
      }
    }
  rep.verdict = (rep.max_pairwise_g <= rep.tol_g && rep.max_pairwise_m <= rep.tol_m)
                    ? UniquenessVerdict::UniqueWithinTol
                    : UniquenessVerdict::MultipleSolutions;
  return rep;
}

}  // namespace eup
