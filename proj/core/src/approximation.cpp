#include "viscolab/approximation.hpp"

#include <cmath>
#include <stdexcept>

#include "viscolab/norms.hpp"

namespace viscolab {

namespace {

Point domain_anchor(const Domain& d) {
  switch (d.shape()) {
    case Domain::Shape::Disc:
      return d.center();
    case Domain::Shape::HalfDisc:
      return pt(0.0, -d.nu());  // centre of the flat piece
    default:
      return 0.5 * (d.box_lo() + d.box_hi());
  }
}

}  // namespace

GapReport approximation_gap(const OperatorSpec& F, GridPtr grid,
                            const CoefficientField& f,
                            const std::function<double(Point)>& psi,
                            const GapConfig& cfg) {
  const StructureParams& sp = F.params();
  const bool has_lower = sp.mu != 0.0 || !sp.b.is_zero() || !sp.d.is_zero();
  const double Bn = norm2(cfg.B);
  if ((cfg.A != 0.0 || Bn != 0.0) && has_lower)
    throw std::invalid_argument(
        "approximation_gap: affine offsets need a lower-order-free operator");

  GapReport rep;
  rep.anchor = domain_anchor(grid->domain());

  Solution v = solve_dirichlet(F, grid, f, psi, cfg.solve);
  rep.v_residual = v.residual_norm;

  // Frozen companion: coefficients pinned at the anchor, lower order
  // dropped. Built kind-for-kind so both solves share one discretization
  // path and the zero-input case degenerates to the same discrete problem.
  const Point anchor = rep.anchor;
  const StructureParams pure{sp.lambda, sp.Lambda, 0.0,
                             CoefficientField::constant(0.0),
                             CoefficientField::constant(0.0), sp.omega};
  OperatorSpec frozen = [&]() {
    switch (F.kind()) {
      case OperatorSpec::Kind::Extremal:
        return OperatorSpec::pucci_pure(F.sign(), sp.lambda, sp.Lambda);
      case OperatorSpec::Kind::ScaledTrace:
        return OperatorSpec::scaled_trace(
            CoefficientField::constant(F.trace_coefficient()(anchor)), pure);
      case OperatorSpec::Kind::Custom:
      default: {
        OperatorSpec base = F;
        return OperatorSpec::custom(
            [base, anchor](Point, double, Point, const SymMatrix& X) {
              return base.eval(anchor, 0.0, pt(0.0, 0.0), X);
            },
            pure, F.label() + "@frozen");
      }
    }
  }();
  Solution h = solve_dirichlet(frozen, grid, CoefficientField::constant(0.0),
                               psi, cfg.solve);
  rep.h_residual = h.residual_norm;
  rep.converged = v.converged && h.converged;

  for (int i = 0; i < grid->n_nodes(); ++i)
    rep.gap = std::max(rep.gap, std::abs(v.u[i] - h.u[i]));

  const double p = cfg.p;
  // beta_bar quadrature: thin the interior nodes when the grid is large,
  // since each evaluation sweeps a matrix family.
  {
    int n_int = grid->n_interior();
    int stride = 1;
    while (n_int / stride > cfg.beta_quad_cap) ++stride;
    double acc = 0.0;
    int used = 0;
    for (int i = 0; i < n_int; i += stride) {
      const double bb = oscillation_beta(F, grid->dim(), grid->pos(i), anchor,
                                         OscillationVariant::BetaBar,
                                         cfg.oscillation)
                            .value;
      acc += std::pow(bb, p);
      ++used;
    }
    const double cell = grid->domain().measure() / std::max(used, 1);
    rep.inputs.beta_bar_norm = std::pow(acc * cell, 1.0 / p);
  }
  rep.inputs.f_norm = lp_norm_of(*grid, [&](Point x) { return f(x); }, p);
  if (!sp.b.is_zero()) {
    const CoefficientField b = sp.b.snapped(*grid);
    rep.inputs.b_term =
        lp_norm_of(*grid, [&](Point x) { return b(x); }, p) * (Bn + 1.0);
  }
  rep.inputs.mu_term = sp.mu * (Bn * Bn + Bn + 1.0);
  if (!sp.d.is_zero()) {
    const CoefficientField d = sp.d.snapped(*grid);
    rep.inputs.d_term = sp.omega(1.0) *
                        lp_norm_of(*grid, [&](Point x) { return d(x); }, p) *
                        (std::abs(cfg.A) + Bn + 1.0);
  }
  rep.inputs.total = rep.inputs.beta_bar_norm + rep.inputs.f_norm +
                     rep.inputs.b_term + rep.inputs.mu_term + rep.inputs.d_term;
  return rep;
}

}  // namespace viscolab
