#include "viscolab/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

#include "viscolab/monotonicity.hpp"
#include "viscolab/norms.hpp"

namespace viscolab {

using SpMat = Eigen::SparseMatrix<double>;

struct DirichletSolver::PolicyCache {
  std::uint64_t signature = 0;
  bool valid = false;
  Eigen::SparseLU<SpMat> lu;
  // Per interior node: frozen boundary contribution sum_b c_b psi_b is
  // recomputed per solve (psi may change), so keep the raw boundary coeffs.
  std::vector<std::vector<std::pair<int, double>>> boundary_coeffs;
  std::vector<double> constants;
};

DirichletSolver::DirichletSolver(OperatorSpec op, GridPtr grid, SolveConfig cfg)
    : cfg_(cfg),
      scheme_(std::move(op), grid, cfg.stencil, cfg.gradient),
      grid_(std::move(grid)),
      cache_(std::make_unique<PolicyCache>()) {}

DirichletSolver::~DirichletSolver() = default;

GridFunction sample_boundary(GridPtr grid,
                             const std::function<double(Point)>& psi) {
  GridFunction g(grid);
  for (int id = grid->n_interior(); id < grid->n_nodes(); ++id)
    g[id] = psi ? psi(grid->pos(id)) : 0.0;
  return g;
}

GridFunction residual_field(const MonotoneScheme& scheme, const GridFunction& u,
                            const GridFunction& f) {
  GridFunction r(u.grid_ptr());
  for (int i = 0; i < u.grid().n_interior(); ++i)
    r[i] = scheme.eval(u, i) - f[i];
  return r;
}

double residual_norm_inf(const MonotoneScheme& scheme, const GridFunction& u,
                         const GridFunction& f) {
  double m = 0.0;
  for (int i = 0; i < u.grid().n_interior(); ++i)
    m = std::max(m, std::abs(scheme.eval(u, i) - f[i]));
  return m;
}

bool DirichletSolver::policy_solve(Solution& sol, const GridFunction& f,
                                   const GridFunction& psi) {
  const Grid& g = *grid_;
  int n = g.n_interior();
  GridFunction u = sol.u;

  double res = residual_norm_inf(scheme_, u, f);
  sol.trace.emplace_back(0, res);
  double best_res = res;
  GridFunction best_u = u;

  for (int it = 1; it <= cfg_.max_policy_iterations; ++it) {
    if (res <= cfg_.tol) {
      sol.converged = true;
      break;
    }
    std::uint64_t sig = scheme_.policy_signature(u);
    if (!cache_->valid || cache_->signature != sig) {
      std::vector<Eigen::Triplet<double>> trip;
      trip.reserve(static_cast<size_t>(n) * 10);
      cache_->boundary_coeffs.assign(n, {});
      cache_->constants.assign(n, 0.0);
      for (int i = 0; i < n; ++i) {
        auto row = scheme_.policy_row(u, i);
        cache_->constants[i] = row.constant;
        for (auto& [col, c] : row.coeffs) {
          if (g.is_interior(col))
            trip.emplace_back(i, col, c);
          else
            cache_->boundary_coeffs[i].emplace_back(col, c);
        }
      }
      SpMat A(n, n);
      A.setFromTriplets(trip.begin(), trip.end());
      A.makeCompressed();
      cache_->lu.compute(A);
      if (cache_->lu.info() != Eigen::Success) {
        cache_->valid = false;
        sol.failure = "policy matrix factorization failed";
        return false;
      }
      cache_->signature = sig;
      cache_->valid = true;
    }

    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      double v = f[i] - cache_->constants[i];
      for (auto& [col, c] : cache_->boundary_coeffs[i]) v -= c * psi[col];
      rhs(i) = v;
    }
    Eigen::VectorXd x = cache_->lu.solve(rhs);

    GridFunction u_next = psi;  // boundary rows carry psi already
    for (int i = 0; i < n; ++i) u_next[i] = x(i);
    double res_next = residual_norm_inf(scheme_, u_next, f);

    // Damp when a policy flip overshoots (possible with the Picard-frozen
    // quadratic gradient term); Howard steps for the pure extremal part
    // settle without this.
    if (res_next > res && res_next > cfg_.tol) {
      for (int k = 0; k < g.n_nodes(); ++k)
        u_next[k] = 0.5 * (u_next[k] + u[k]);
      res_next = residual_norm_inf(scheme_, u_next, f);
    }
    u = u_next;
    res = res_next;
    sol.trace.emplace_back(it, res);
    sol.iterations = it;
    if (res < best_res) {
      best_res = res;
      best_u = u;
    }
  }

  sol.u = best_res <= res ? best_u : u;
  sol.residual_norm = std::min(best_res, res);
  if (sol.residual_norm <= cfg_.tol) sol.converged = true;
  return sol.converged;
}

void DirichletSolver::pseudo_transient(Solution& sol, const GridFunction& f,
                                       const GridFunction& psi) {
  const Grid& g = *grid_;
  int n = g.n_interior();
  GridFunction u = sol.u;
  GridFunction u_next = u;
  double initial = 0.0;

  for (int sweep = sol.iterations; sweep < cfg_.max_sweeps; ++sweep) {
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      double r = scheme_.eval(u, i) - f[i];
      res = std::max(res, std::abs(r));
      double L = scheme_.local_bound(u, i);
      u_next[i] = u[i] + cfg_.rho_safety / L * r;
    }
    if (sweep == sol.iterations) initial = res;
    if (sweep % cfg_.trace_stride == 0) sol.trace.emplace_back(sweep, res);
    sol.iterations = sweep + 1;
    sol.residual_norm = res;
    if (!std::isfinite(res) || res > 1e8 * (1.0 + initial)) {
      sol.failure = "pseudo-transient iteration diverged";
      sol.u = u;
      return;
    }
    if (res <= cfg_.tol) {
      sol.converged = true;
      sol.u = u;
      return;
    }
    std::swap(u.values(), u_next.values());
    for (int b = n; b < g.n_nodes(); ++b) u[b] = psi[b];
  }
  sol.u = u;
  sol.residual_norm = residual_norm_inf(scheme_, u, f);
  sol.converged = sol.residual_norm <= cfg_.tol;
  if (!sol.converged) sol.failure = "pseudo-transient sweep budget exhausted";
}

Solution DirichletSolver::solve(const GridFunction& f, const GridFunction& psi,
                                const GridFunction* warm_start) {
  const Grid& g = *grid_;
  Solution sol(grid_);

  // Advisory smallness gate for quadratic gradient growth.
  const auto& params = scheme_.op().params();
  if (params.mu > 0.0) {
    double p = cfg_.mu_gate_p > 0.0 ? cfg_.mu_gate_p
                                    : static_cast<double>(g.dim() + 1);
    bool minus_branch = scheme_.op().is_extremal() &&
                        scheme_.op().sign() == ExtremalSign::Minus;
    GridFunction side(grid_);
    for (int i = 0; i < g.n_interior(); ++i)
      side[i] = minus_branch ? pos_part(f[i]) : neg_part(f[i]);
    double nrm = lp_norm(side, p);
    sol.mu_gate_value = params.mu * nrm *
                        std::pow(g.domain().diameter(),
                                 static_cast<double>(g.dim()) / p);
    sol.mu_gate_ok = sol.mu_gate_value <= cfg_.mu_gate_delta;
  }

  if (scheme_.op().kind() == OperatorSpec::Kind::Custom &&
      !cfg_.force_non_monotone) {
    auto audit = monotonicity_audit(scheme_, 2000, 31);
    if (!audit.pass) {
      sol.failure = "scheme failed the monotonicity audit (" +
                    std::to_string(audit.violation_count) +
                    " violations); set force_non_monotone to override";
      sol.u = psi;
      return sol;
    }
  }

  // Initial iterate.
  if (warm_start) {
    sol.u = *warm_start;
    for (int b = g.n_interior(); b < g.n_nodes(); ++b) sol.u[b] = psi[b];
  } else {
    double mean = 0.0;
    for (int b = g.n_interior(); b < g.n_nodes(); ++b) mean += psi[b];
    mean /= std::max(1, g.n_boundary());
    sol.u = psi;
    for (int i = 0; i < g.n_interior(); ++i) sol.u[i] = mean;
  }

  if (cfg_.policy_iteration && scheme_.supports_policy()) {
    sol.used_policy = true;
    if (policy_solve(sol, f, psi)) return sol;
    if (!sol.failure.empty()) return sol;
    // Policy stalled; continue explicitly from the best iterate.
  } else if (!warm_start && scheme_.supports_policy()) {
    GridFunction ext = harmonic_extension(grid_, psi);
    for (int i = 0; i < g.n_interior(); ++i) sol.u[i] = ext[i];
  }

  pseudo_transient(sol, f, psi);
  return sol;
}

GridFunction harmonic_extension(GridPtr grid, const GridFunction& psi) {
  SolveConfig cfg;
  cfg.tol = 1e-10;
  DirichletSolver solver(
      OperatorSpec::scaled_trace(CoefficientField::constant(1.0), {}), grid,
      cfg);
  GridFunction zero(grid);
  auto sol = solver.solve(zero, psi);
  return sol.u;
}

Solution solve_dirichlet(const OperatorSpec& op, GridPtr grid,
                         const CoefficientField& f,
                         const std::function<double(Point)>& psi,
                         SolveConfig cfg) {
  DirichletSolver solver(op, grid, cfg);
  GridFunction fs = f.sample(grid);
  GridFunction ps = sample_boundary(grid, psi);
  return solver.solve(fs, ps);
}

Solution solve_pure(const OperatorSpec& op, GridPtr grid,
                    const std::function<double(Point)>& psi, SolveConfig cfg) {
  if (!op.is_pure_second_order())
    throw std::invalid_argument(
        "solve_pure: operator has lower-order terms or x dependence");
  return solve_dirichlet(op, std::move(grid), CoefficientField::constant(0.0),
                         psi, cfg);
}

}  // namespace viscolab
