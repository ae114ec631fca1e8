#include "eup/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eup {

namespace {

// Fields expanded to all nodes, boundary values imposed.
struct FullFields {
  std::vector<double> g, m;
};

FullFields expand(const StateVector& state, const ProblemSpec& problem, const Grid& grid) {
  const std::size_t n = grid.nodes().size();
  FullFields f;
  f.g.resize(n);
  f.m.resize(n);
  f.g.front() = 1.0;
  f.g.back() = 1.0;
  f.m.front() = problem.eta0;
  f.m.back() = state.m_end;
  std::copy(state.g_interior.begin(), state.g_interior.end(), f.g.begin() + 1);
  std::copy(state.m_interior.begin(), state.m_interior.end(), f.m.begin() + 1);
  return f;
}

void check_sizes(const StateVector& state, const Grid& grid) {
  const std::size_t want = static_cast<std::size_t>(grid.cells()) - 1;
  if (state.g_interior.size() != want || state.m_interior.size() != want)
    throw std::invalid_argument("state size does not match grid");
}

double diffusion_g(double g, double k) { return 1.0 / g - k / (g * g * g); }
double diffusion_g_slope(double g, double k) {
  return -1.0 / (g * g) + 3.0 * k / (g * g * g * g);
}
double diffusion_m(double m, double j) { return 1.0 / m - j * j / (m * m * m); }
double diffusion_m_slope(double m, double j) {
  return -1.0 / (m * m) + 3.0 * j * j / (m * m * m * m);
}

// Constraint row and its magnitude scale share one code path with
// first_integral_constant.
struct ConstraintEval {
  double residual;
  double scale;
};

ConstraintEval constraint_row(const FullFields& f, const ProblemSpec& problem,
                              const Grid& grid) {
  const std::size_t n = f.g.size();
  std::vector<double> integrand(n), magnitude(n);
  for (std::size_t i = 0; i < n; ++i) {
    integrand[i] = 1.0 / f.g[i] - 1.0 / f.m[i];
    magnitude[i] = 1.0 / f.g[i] + 1.0 / f.m[i];
  }
  const double quad = trapezoid(integrand, grid);
  const double tj = problem.theta * problem.j;
  const double log_term = 4.0 * std::log(grid.epsilon0());
  const double pot_end = flow_potential(f.m.back(), 1.0);
  const double pot_0 = flow_potential(problem.eta0, 1.0);
  ConstraintEval out;
  out.residual = pot_end - pot_0 + tj * quad + log_term;
  out.scale = std::abs(pot_end) + std::abs(pot_0) + tj * trapezoid(magnitude, grid) +
              std::abs(log_term);
  return out;
}

}  // namespace

void StateVector::require_feasible(double k) const {
  const double g_floor = std::sqrt(k);
  for (std::size_t i = 0; i < g_interior.size(); ++i)
    if (!(g_interior[i] > g_floor))
      throw std::domain_error("state infeasible: g at interior node " +
                              std::to_string(i + 1) + " is not above sqrt(k)");
  for (std::size_t i = 0; i < m_interior.size(); ++i)
    if (!(m_interior[i] > 1.0))
      throw std::domain_error("state infeasible: m at interior node " +
                              std::to_string(i + 1) + " is not above 1");
  if (!(m_end > 1.0)) throw std::domain_error("state infeasible: m_end is not above 1");
}

double Residual::max_abs() const {
  double mx = std::abs(constraint);
  for (double v : electron) mx = std::max(mx, std::abs(v));
  for (double v : hole) mx = std::max(mx, std::abs(v));
  return mx;
}

bool Residual::within(double tol) const {
  if (std::abs(constraint) > tol * std::max(1.0, constraint_scale)) return false;
  for (std::size_t i = 0; i < electron.size(); ++i)
    if (std::abs(electron[i]) > tol * std::max(1.0, electron_scale[i])) return false;
  for (std::size_t i = 0; i < hole.size(); ++i)
    if (std::abs(hole[i]) > tol * std::max(1.0, hole_scale[i])) return false;
  return true;
}

Residual assemble_residual(const StateVector& state, const ProblemSpec& problem,
                           double k, const Grid& grid, const SourceTerm* source) {
  check_sizes(state, grid);
  if (!(k > 0.0 && k <= 1.0)) throw std::invalid_argument("k must lie in (0, 1]");
  state.require_feasible(k);
  if (source && (source->electron.size() != state.g_interior.size() ||
                 source->hole.size() != state.m_interior.size()))
    throw std::invalid_argument("source size does not match grid");

  const FullFields f = expand(state, problem, grid);
  const int N = grid.cells();
  const double h = grid.spacing();
  const double tj = problem.theta * problem.j;

  // Half-node fluxes. F/G are diffusive, P/Q the relaxation drifts.
  std::vector<double> F(static_cast<std::size_t>(N)), P(F), G(F), Q(F);
  std::vector<double> Fmag(F), Gmag(F);
  for (int c = 0; c < N; ++c) {
    const std::size_t cs = static_cast<std::size_t>(c);
    const double rh = 0.5 * (grid.node(c) + grid.node(c + 1));
    const double r2 = rh * rh;
    const double gh = 0.5 * (f.g[cs] + f.g[cs + 1]);
    const double mh = 0.5 * (f.m[cs] + f.m[cs + 1]);
    const double a = diffusion_g(gh, k);
    const double b = diffusion_m(mh, problem.j);
    F[cs] = r2 * a * (f.g[cs + 1] - f.g[cs]) / h;
    G[cs] = r2 * b * (f.m[cs + 1] - f.m[cs]) / h;
    P[cs] = tj * r2 / gh;
    Q[cs] = tj * r2 / mh;
    Fmag[cs] = r2 * std::abs(a) * (std::abs(f.g[cs]) + std::abs(f.g[cs + 1])) / h;
    Gmag[cs] = r2 * std::abs(b) * (std::abs(f.m[cs]) + std::abs(f.m[cs + 1])) / h;
  }

  Residual out;
  const std::size_t ni = static_cast<std::size_t>(N) - 1;
  out.electron.resize(ni);
  out.hole.resize(ni);
  out.electron_scale.resize(ni);
  out.hole_scale.resize(ni);
  for (int i = 1; i < N; ++i) {
    const std::size_t is = static_cast<std::size_t>(i);
    const std::size_t c = is - 1;  // cell left of node i
    const double B = problem.doping.value(grid.node(i));
    const double rhs_e = f.g[is] - f.m[is] - B + 2.0;
    const double rhs_h = f.m[is] + B - f.g[is] + 2.0;
    double re = (F[is] - F[c]) / h + (P[is] - P[c]) / h - rhs_e;
    double rh_ = (G[is] - G[c]) / h - (Q[is] - Q[c]) / h - rhs_h;
    const double alg = std::abs(f.g[is]) + std::abs(f.m[is]) + std::abs(B) + 2.0;
    double se = (Fmag[is] + Fmag[c] + P[is] + P[c]) / h + alg;
    double sh = (Gmag[is] + Gmag[c] + Q[is] + Q[c]) / h + alg;
    if (source) {
      re -= source->electron[c];
      rh_ -= source->hole[c];
      se += std::abs(source->electron[c]);
      sh += std::abs(source->hole[c]);
    }
    out.electron[c] = re;
    out.hole[c] = rh_;
    out.electron_scale[c] = se;
    out.hole_scale[c] = sh;
  }

  const ConstraintEval ce = constraint_row(f, problem, grid);
  out.constraint = ce.residual - (source ? source->constraint : 0.0);
  out.constraint_scale = ce.scale + (source ? std::abs(source->constraint) : 0.0);
  return out;
}

BorderedBandMatrix assemble_jacobian(const StateVector& state, const ProblemSpec& problem,
                                     double k, const Grid& grid) {
  check_sizes(state, grid);
  state.require_feasible(k);
  const FullFields f = expand(state, problem, grid);
  const int N = grid.cells();
  const double h = grid.spacing();
  const double tj = problem.theta * problem.j;

  const int n = 2 * (N - 1);
  BorderedBandMatrix jac(n, 2, 2);

  // Per-cell flux derivatives with respect to the two endpoint values.
  // dF[c] = (dF/d left, dF/d right), likewise for the drifts.
  std::vector<double> dF_L(static_cast<std::size_t>(N)), dF_R(dF_L), dP(dF_L);
  std::vector<double> dG_L(dF_L), dG_R(dF_L), dQ(dF_L);
  for (int c = 0; c < N; ++c) {
    const std::size_t cs = static_cast<std::size_t>(c);
    const double rh = 0.5 * (grid.node(c) + grid.node(c + 1));
    const double r2 = rh * rh;
    const double gh = 0.5 * (f.g[cs] + f.g[cs + 1]);
    const double mh = 0.5 * (f.m[cs] + f.m[cs + 1]);
    const double a = diffusion_g(gh, k);
    const double ap = diffusion_g_slope(gh, k);
    const double b = diffusion_m(mh, problem.j);
    const double bp = diffusion_m_slope(mh, problem.j);
    const double dg = (f.g[cs + 1] - f.g[cs]) / h;
    const double dm = (f.m[cs + 1] - f.m[cs]) / h;
    dF_L[cs] = r2 * (-a / h + 0.5 * ap * dg);
    dF_R[cs] = r2 * (a / h + 0.5 * ap * dg);
    dG_L[cs] = r2 * (-b / h + 0.5 * bp * dm);
    dG_R[cs] = r2 * (b / h + 0.5 * bp * dm);
    dP[cs] = -0.5 * tj * r2 / (gh * gh);  // wrt either endpoint value
    dQ[cs] = -0.5 * tj * r2 / (mh * mh);
  }

  const auto gcol = [](int i) { return 2 * (i - 1); };
  const auto mcol = [](int i) { return 2 * (i - 1) + 1; };

  for (int i = 1; i < N; ++i) {
    const std::size_t cr = static_cast<std::size_t>(i);      // right cell
    const std::size_t cl = static_cast<std::size_t>(i) - 1;  // left cell
    const int re = gcol(i), rm = mcol(i);
    // electron row
    if (i > 1) jac.core(re, gcol(i - 1)) = (-dF_L[cl] - dP[cl]) / h;
    jac.core(re, gcol(i)) = (dF_L[cr] - dF_R[cl] + dP[cr] - dP[cl]) / h - 1.0;
    if (i < N - 1) jac.core(re, gcol(i + 1)) = (dF_R[cr] + dP[cr]) / h;
    jac.core(re, mcol(i)) = 1.0;
    // hole row
    if (i > 1) jac.core(rm, mcol(i - 1)) = (-dG_L[cl] + dQ[cl]) / h;
    jac.core(rm, mcol(i)) = (dG_L[cr] - dG_R[cl] - dQ[cr] + dQ[cl]) / h - 1.0;
    if (i < N - 1)
      jac.core(rm, mcol(i + 1)) = (dG_R[cr] - dQ[cr]) / h;
    else
      jac.border_col(rm) = (dG_R[cr] - dQ[cr]) / h;  // couples to m_end
    jac.core(rm, gcol(i)) = 1.0;
  }

  // Border row: constraint derivatives through the trapezoid weights.
  for (int i = 1; i < N; ++i) {
    const std::size_t is = static_cast<std::size_t>(i);
    jac.border_row(gcol(i)) = -tj * h / (f.g[is] * f.g[is]);
    jac.border_row(mcol(i)) = tj * h / (f.m[is] * f.m[is]);
  }
  jac.corner() = flow_potential_slope(state.m_end, 1.0) +
                 tj * (0.5 * h) / (state.m_end * state.m_end);
  return jac;
}

double first_integral_constant(const StateVector& state, const ProblemSpec& problem,
                               const Grid& grid) {
  check_sizes(state, grid);
  const FullFields f = expand(state, problem, grid);
  const double eps0 = grid.epsilon0();
  return constraint_row(f, problem, grid).residual * eps0 / (1.0 - eps0);
}

double momentum_identity_residual(const StateVector& state, const ProblemSpec& problem,
                                  double k, const Grid& grid) {
  check_sizes(state, grid);
  const FullFields f = expand(state, problem, grid);
  const int N = grid.cells();
  const double h = grid.spacing();
  const double tj = problem.theta * problem.j;
  double mx = 0.0;
  for (int i = 1; i < N; ++i) {
    const std::size_t is = static_cast<std::size_t>(i);
    const double gr = (f.g[is + 1] - f.g[is - 1]) / (2.0 * h);
    const double mr = (f.m[is + 1] - f.m[is - 1]) / (2.0 * h);
    const double lhs = diffusion_g(f.g[is], k) * gr + diffusion_m(f.m[is], problem.j) * mr +
                       tj * (1.0 / f.g[is] - 1.0 / f.m[is]) - 4.0 / grid.node(i);
    mx = std::max(mx, std::abs(lhs));
  }
  return mx;
}

WeakResiduals weak_form_residual(const StateVector& state, const ProblemSpec& problem,
                                 const Grid& grid) {
  check_sizes(state, grid);
  const FullFields f = expand(state, problem, grid);
  const int N = grid.cells();
  const double h = grid.spacing();
  const double tj = problem.theta * problem.j;

  // Per-cell weak fluxes at half nodes; the electron diffusion uses the
  // (g-1)^2 form, well defined up to the sonic boundary.
  std::vector<double> We(static_cast<std::size_t>(N)), Wh(We);
  for (int c = 0; c < N; ++c) {
    const std::size_t cs = static_cast<std::size_t>(c);
    const double rh = 0.5 * (grid.node(c) + grid.node(c + 1));
    const double r2 = rh * rh;
    const double gh = 0.5 * (f.g[cs] + f.g[cs + 1]);
    const double mh = 0.5 * (f.m[cs] + f.m[cs + 1]);
    const double sq_r = ((f.g[cs + 1] - 1.0) * (f.g[cs + 1] - 1.0) -
                         (f.g[cs] - 1.0) * (f.g[cs] - 1.0)) / h;
    We[cs] = r2 * (gh + 1.0) / (2.0 * gh * gh * gh) * sq_r + tj * r2 / gh - 2.0 * rh;
    Wh[cs] = r2 * diffusion_m(mh, problem.j) * (f.m[cs + 1] - f.m[cs]) / h -
             tj * r2 / mh - 2.0 * rh;
  }
  WeakResiduals out;
  for (int i = 1; i < N; ++i) {
    const std::size_t is = static_cast<std::size_t>(i);
    const double B = problem.doping.value(grid.node(i));
    const double we = We[is - 1] - We[is] + h * (f.g[is] - f.m[is] - B);
    const double wh = Wh[is - 1] - Wh[is] + h * (f.m[is] + B - f.g[is]);
    out.electron = std::max(out.electron, std::abs(we));
    out.hole = std::max(out.hole, std::abs(wh));
  }
  return out;
}

SolutionFields make_solution_fields(const StateVector& state, const ProblemSpec& problem,
                                    const Grid& grid) {
  check_sizes(state, grid);
  const FullFields f = expand(state, problem, grid);
  const int N = grid.cells();
  const double h = grid.spacing();
  SolutionFields s;
  s.r = grid.nodes();
  s.g = f.g;
  s.m = f.m;
  s.m_end = state.m_end;
  const std::size_t n = s.r.size();
  s.E.resize(n);
  s.rho.resize(n);
  s.n.resize(n);
  s.u.resize(n);
  s.v.resize(n);
  for (int i = 0; i <= N; ++i) {
    const std::size_t is = static_cast<std::size_t>(i);
    double gr;
    if (i == 0)
      gr = (-3.0 * f.g[0] + 4.0 * f.g[1] - f.g[2]) / (2.0 * h);
    else if (i == N)
      gr = (3.0 * f.g[is] - 4.0 * f.g[is - 1] + f.g[is - 2]) / (2.0 * h);
    else
      gr = (f.g[is + 1] - f.g[is - 1]) / (2.0 * h);
    s.E[is] = electric_field(s.r[is], f.g[is], gr, problem.theta, problem.j);
    s.rho[is] = physical_density(f.g[is], s.r[is]);
    s.n[is] = physical_density(f.m[is], s.r[is]);
    s.u[is] = problem.j / f.g[is];
    s.v[is] = problem.j / f.m[is];
  }
  return s;
}

}  // namespace eup
