#include "viscolab/eigen_solve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace viscolab {

namespace {

std::vector<double> default_schedule() {
  std::vector<double> s;
  for (int k = 0; k <= 10; ++k) s.push_back(std::pow(2.0, -k));
  return s;
}

GridFunction distance_profile(GridPtr grid) {
  GridFunction u(grid);
  double m = 0.0;
  for (int i = 0; i < grid->n_interior(); ++i) {
    u[i] = grid->domain().boundary_distance(grid->pos(i));
    m = std::max(m, u[i]);
  }
  if (m > 0.0)
    for (int i = 0; i < grid->n_interior(); ++i) u[i] /= m;
  return u;
}

}  // namespace

PowerStep power_step(DirichletSolver& solver, const std::vector<double>& weight,
                     const GridFunction& u) {
  GridPtr grid = u.grid_ptr();
  if (static_cast<int>(weight.size()) != grid->n_interior())
    throw std::invalid_argument("power_step: weight size mismatch");

  GridFunction rhs(grid), zero(grid);
  for (int i = 0; i < grid->n_interior(); ++i) rhs[i] = -weight[i] * u[i];

  Solution sol = solver.solve(rhs, zero, &u);
  PowerStep st(sol.u);
  double m = 0.0;
  for (int i = 0; i < grid->n_interior(); ++i) m = std::max(m, sol.u[i]);
  if (m <= 0.0) {
    st.alpha_est = std::numeric_limits<double>::infinity();
    st.positive = false;
    st.next = u;
    return st;
  }
  st.alpha_est = 1.0 / m;
  for (int i = 0; i < grid->n_interior(); ++i) st.next[i] = sol.u[i] / m;
  return st;
}

EigenPair eigen_solve(const OperatorSpec& F, const CoefficientField& c,
                      GridPtr grid, ExtremalSign branch,
                      const EigenConfig& cfg) {
  if (!F.is_one_homogeneous(grid->dim()))
    throw std::invalid_argument("eigen_solve: operator must be 1-homogeneous");

  // The minus branch mirrors through the companion operator: a positive
  // profile for G corresponds to the negative principal profile of F.
  const bool minus = branch == ExtremalSign::Minus;
  OperatorSpec op = minus ? F.dual() : F;

  const CoefficientField cs = c.snapped(*grid);
  std::vector<double> c_int(grid->n_interior());
  for (int i = 0; i < grid->n_interior(); ++i) {
    c_int[i] = cs(grid->pos(i));
    if (c_int[i] < 0.0)
      throw std::invalid_argument("eigen_solve: weight must be >= 0");
  }

  SolveConfig scfg = cfg.solver;
  DirichletSolver solver(op, grid, scfg);

  EigenPair pair(grid);
  pair.branch = branch;
  GridFunction u = cfg.initial ? *cfg.initial : distance_profile(grid);
  {
    // Sanitize the start profile: nonnegative interior, zero boundary,
    // interior max 1.
    double m = 0.0;
    for (int i = 0; i < grid->n_interior(); ++i) {
      u[i] = std::max(u[i], 0.0);
      m = std::max(m, u[i]);
    }
    if (m <= 0.0) { u = distance_profile(grid); m = 1.0; }
    for (int i = 0; i < grid->n_interior(); ++i) u[i] /= m;
    for (int i = grid->n_interior(); i < grid->n_nodes(); ++i) u[i] = 0.0;
  }

  std::vector<double> schedule =
      cfg.eps_schedule.empty() ? default_schedule() : cfg.eps_schedule;
  // Strictly positive weights need no regularization: finish at eps = 0 so
  // the reported residual is solver-level rather than eps-limited.
  double c_min = std::numeric_limits<double>::infinity();
  for (double v : c_int) c_min = std::min(c_min, v);
  if (c_min > 0.0 && (schedule.empty() || schedule.back() > 0.0))
    schedule.push_back(0.0);

  double alpha = 0.0;
  bool ok = true;
  std::vector<double> weight(c_int.size());
  for (double eps : schedule) {
    if (!ok) break;
    for (std::size_t i = 0; i < weight.size(); ++i) weight[i] = c_int[i] + eps;
    double alpha_eps = 0.0;
    bool stalled = false;
    for (int it = 0; it < cfg.max_power_steps; ++it) {
      PowerStep st = power_step(solver, weight, u);
      ++pair.steps;
      if (!st.positive) { ok = false; break; }
      double du = 0.0;
      for (int i = 0; i < grid->n_interior(); ++i)
        du = std::max(du, std::abs(st.next[i] - u[i]));
      const double da = std::abs(st.alpha_est - alpha_eps);
      alpha_eps = st.alpha_est;
      u = st.next;
      if (it > 0 && da <= cfg.tol_alpha * std::max(1.0, alpha_eps) &&
          du <= cfg.tol_field) {
        stalled = true;
        break;
      }
    }
    if (!ok) break;
    pair.schedule.emplace_back(eps, alpha_eps);
    alpha = alpha_eps;
    if (!stalled) ok = false;
  }

  pair.alpha = alpha;
  pair.converged = ok;
  for (int i = 0; i < grid->n_nodes(); ++i)
    pair.phi[i] = minus ? -u[i] : u[i];

  // Residual against the requested branch: F_h[phi] + alpha c phi.
  MonotoneScheme res_scheme(F, grid, scfg.stencil, scfg.gradient);
  double res = 0.0;
  for (int i = 0; i < grid->n_interior(); ++i)
    res = std::max(res,
                   std::abs(res_scheme.eval(pair.phi, i) +
                            alpha * c_int[i] * pair.phi[i]));
  pair.residual = res;
  return pair;
}

}  // namespace viscolab
