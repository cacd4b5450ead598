#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "viscolab/coefficient.hpp"
#include "viscolab/scheme.hpp"

namespace viscolab {

struct SolveConfig {
  double tol = 1e-8;            // residual sup-norm target
  int max_sweeps = 200000;      // pseudo-transient cap
  StencilConfig stencil{8};
  double rho_safety = 0.5;      // explicit step: rho_i = rho_safety / L_i
  bool policy_iteration = true;
  int max_policy_iterations = 80;
  GradientDiscretization gradient = GradientDiscretization::Upwind;
  bool force_non_monotone = false;  // run custom schemes that fail the audit
  double mu_gate_delta = 1.0;       // advisory smallness gate when mu > 0
  double mu_gate_p = 0.0;           // L^p exponent for the gate; 0 = dim + 1
  int trace_stride = 100;           // pseudo-transient residual recording
};

struct Solution {
  GridFunction u;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;            // policy iterations + pseudo sweeps
  bool used_policy = false;
  bool mu_gate_ok = true;
  double mu_gate_value = 0.0;
  std::vector<std::pair<int, double>> trace;  // (iteration, residual)
  std::string failure;           // empty on success

  explicit Solution(GridPtr g) : u(std::move(g)) {}
};

/// Dirichlet solver for F_h[u] = f with u = psi on the boundary nodes.
/// Keeps the last policy factorization alive, so repeated solves with the
/// same operator and a stable policy (eigenvalue power steps) cost one
/// back-substitution each.
class DirichletSolver {
 public:
  DirichletSolver(OperatorSpec op, GridPtr grid, SolveConfig cfg = {});
  ~DirichletSolver();

  Solution solve(const GridFunction& f, const GridFunction& psi,
                 const GridFunction* warm_start = nullptr);

  const MonotoneScheme& scheme() const { return scheme_; }
  MonotoneScheme& mutable_scheme() { return scheme_; }
  const SolveConfig& config() const { return cfg_; }

 private:
  struct PolicyCache;
  bool policy_solve(Solution& sol, const GridFunction& f,
                    const GridFunction& psi);
  void pseudo_transient(Solution& sol, const GridFunction& f,
                        const GridFunction& psi);

  SolveConfig cfg_;
  MonotoneScheme scheme_;
  GridPtr grid_;
  std::unique_ptr<PolicyCache> cache_;
};

/// One-call convenience wrappers.
Solution solve_dirichlet(const OperatorSpec& op, GridPtr grid,
                         const CoefficientField& f,
                         const std::function<double(Point)>& psi,
                         SolveConfig cfg = {});

/// Pure second-order problem F(D^2 u) = 0 with boundary data psi; rejects
/// operators with lower-order terms or x dependence.
Solution solve_pure(const OperatorSpec& op, GridPtr grid,
                    const std::function<double(Point)>& psi,
                    SolveConfig cfg = {});

/// F_h[u] - f at interior nodes, zero at boundary nodes.
GridFunction residual_field(const MonotoneScheme& scheme, const GridFunction& u,
                            const GridFunction& f);

double residual_norm_inf(const MonotoneScheme& scheme, const GridFunction& u,
                         const GridFunction& f);

/// Discrete harmonic extension of psi (axis Laplacian); the default warm
/// start for the explicit iteration.
GridFunction harmonic_extension(GridPtr grid, const GridFunction& psi);

GridFunction sample_boundary(GridPtr grid,
                             const std::function<double(Point)>& psi);

}  // namespace viscolab
