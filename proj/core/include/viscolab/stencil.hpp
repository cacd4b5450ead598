#pragma once

#include <vector>

#include "viscolab/grid.hpp"
#include "viscolab/sym_matrix.hpp"

namespace viscolab {

/// Wide-stencil width: number of neighbor points. 4 = axes, 8 = axes +
/// diagonals, 16 = axes + diagonals + knight directions. 1D grids use the
/// single axis regardless of m.
struct StencilConfig {
  int m = 8;
  void validate(int dim) const;
};

/// Which one-sided slopes the upwind gradient may select. The choice is tied
/// to the sign the |Du| term carries in the scheme: Raise keeps +b|Du|
/// monotone (nondecreasing in every neighbor value), Lower keeps -b|Du|
/// monotone.
enum class UpwindBias { Raise, Lower };

/// Second directional difference along line direction k at an interior node,
/// using the exact (possibly cut) arm lengths:
///   2/(s+ + s-) * [ (u+ - u0)/s+ + (u- - u0)/s- ]
/// Exact on quadratics for any arm lengths.
double second_directional_diff(const GridFunction& u, int node, int k);

/// Directional second differences for every direction of a stencil of
/// width m, in the order of Grid::dirs_for(m).
std::vector<double> directional_diffs(const GridFunction& u, int node, int m);

/// Symmetric Hessian proxy assembled from axis (and, in 2D, diagonal)
/// second differences. Exact on quadratics.
SymMatrix hessian_proxy(const GridFunction& u, int node);

/// Wide-stencil Pucci value: extremum over orthogonal frames of the summed
/// envelope of directional second differences.
double pucci_stencil(const GridFunction& u, int node, double lambda,
                     double Lambda, ExtremalSign sign, const StencilConfig& cfg);

/// Godunov-type upwind gradient magnitude; see UpwindBias.
double upwind_gradient_norm(const GridFunction& u, int node, UpwindBias bias);

/// mu |Du|^2 with the same upwind selection.
double upwind_quadratic_hamiltonian(const GridFunction& u, int node, double mu,
                                    UpwindBias bias);

/// Centered gradient (per axis (u+ - u-)/(s+ + s-)); used for reporting and
/// norms, not inside monotone schemes.
Point central_gradient(const GridFunction& u, int node);

/// Pointwise discrete derivative bundle at an interior node.
struct DiscreteDerivs {
  double r = 0.0;
  Point grad{0, 0};
  std::vector<double> dir_diffs;
  SymMatrix hessian;
};

DiscreteDerivs discrete_derivs(const GridFunction& u, int node,
                               const StencilConfig& cfg);

}  // namespace viscolab
