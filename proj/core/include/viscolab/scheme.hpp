#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "viscolab/operator_spec.hpp"
#include "viscolab/stencil.hpp"

namespace viscolab {

/// How the |Du| term is differenced. Centered is deliberately non-monotone
/// and exists as a negative control for the monotonicity audit; production
/// solves use Upwind.
enum class GradientDiscretization { Upwind, Centered };

/// Discrete operator F_h on a grid. For extremal and scaled-trace operators
/// the assembly is monotone by construction: directional second differences
/// have positive neighbor weights, the frame extremum preserves monotonicity,
/// and the |Du| upwind bias follows the sign of the term. Custom operators
/// evaluate F on the discrete derivative bundle and carry no monotonicity
/// guarantee (the audit gates them before solving).
class MonotoneScheme {
 public:
  MonotoneScheme(OperatorSpec op, GridPtr grid, StencilConfig stencil,
                 GradientDiscretization grad = GradientDiscretization::Upwind);

  const OperatorSpec& op() const { return op_; }
  GridPtr grid_ptr() const { return grid_; }
  const StencilConfig& stencil() const { return stencil_; }

  /// Extremal / scaled-trace operators support exact policy linearization.
  bool supports_policy() const;

  /// F_h[u] at an interior node.
  double eval(const GridFunction& u, int node) const;

  /// Upper bound for |dF_h/du_node| at the current iterate; the explicit
  /// pseudo-transient step uses rho_i = rho_safety / bound.
  double local_bound(const GridFunction& u, int node) const;

  /// Linearization of F_h at `node` with all selections (frame, envelope
  /// branch, upwind side, zero-order branch) frozen at u. Reproduces
  /// eval(u, node) exactly at u. Columns are global node ids (boundary
  /// columns are eliminated by the solver).
  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    double constant = 0.0;
  };
  Row policy_row(const GridFunction& u, int node) const;

  /// Hash of all frozen selections over the grid; equal hashes mean the
  /// linearized systems share their matrix.
  std::uint64_t policy_signature(const GridFunction& u) const;

  /// Adds a linear zero-order term c(x) u to the scheme: F_h[u] + c u.
  /// c >= 0 deliberately runs against properness; small-domain maximum
  /// principle experiments rely on it.
  void set_linear_zero_order(std::vector<double> c_interior);

 private:
  struct NodeEval;
  NodeEval eval_parts(const GridFunction& u, int node) const;

  OperatorSpec op_;
  GridPtr grid_;
  StencilConfig stencil_;
  GradientDiscretization grad_;
  std::vector<double> b_vals_, d_vals_, a_vals_;  // sampled at interior nodes
  std::vector<double> linear_c_;                  // optional +c(x) u term
};

}  // namespace viscolab
