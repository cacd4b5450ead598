#pragma once

#include "viscolab/grid.hpp"
#include "viscolab/minimax.hpp"
#include "viscolab/operator_spec.hpp"

namespace viscolab {

/// A problem instance carried to a normalized frame, with the bookkeeping
/// needed to invert the map. The transformed field is exact at every new
/// node whose pre-image is an original node; new boundary nodes (on the
/// target ball rim) are filled by interpolation.
enum class RescaleKind { Blowup, Iteration };

struct RescaledProblem {
  RescaledProblem(OperatorSpec o, GridPtr g, GridFunction uu, GridFunction ff)
      : op(std::move(o)), grid(std::move(g)), u(std::move(uu)), f(std::move(ff)) {}

  RescaleKind kind = RescaleKind::Blowup;
  OperatorSpec op;  // transformed operator (structure parameters transformed)
  GridPtr grid;
  GridFunction u;
  GridFunction f;  // transformed rhs, zero-order correction folded in

  double sigma = 1.0;    // spatial contraction (blowup)
  double N = 1.0;        // amplitude divisor (blowup)
  double W = 0.0;        // mass bracket entering N
  double supdev = 0.0;   // sup of |u - u(x0)| over the carried ball
  Point x0{0.0, 0.0};    // blowup centre
  double r_k = 1.0;      // scale (iteration)
  double alpha = 0.0;    // exponent (iteration)
  double l_a = 0.0;      // affine offset removed, absolute coordinates
  Point l_b{0.0, 0.0};
  double divisor = 1.0;  // N (blowup) or r_k^{1+alpha} (iteration)
};

/// Blowup to the ball of radius 2: utilde(x) = (u(sigma x + x0) - u(x0)) / N
/// with N = sigma W + sup deviation, W = ||u||_inf + ||f||_p + ||d||_p w(||u||_inf).
/// `unit_floor` replaces W by max(W, 1), the variant that serves arbitrary
/// moduli. x0 must be a lattice point and B_{2 sigma}(x0) must fit in the
/// domain; in 1D 2*sigma/h must be an integer so the target grid tiles.
RescaledProblem rescale_blowup(const OperatorSpec& op, const GridFunction& u,
                               const GridFunction& f, Point x0, double sigma,
                               double p, bool unit_floor = false);

/// Scale-iteration step to the unit ball: v(x) = (u(r x) - l(r x)) / r^{1+alpha}
/// for an affine l (absolute coordinates, centre at the origin). K is the
/// gradient bound entering the transformed b through the quadratic term.
/// f may be null (treated as 0); the zero-order correction is still applied.
RescaledProblem rescale_iteration(const OperatorSpec& op, const GridFunction& u,
                                  double r_k, double alpha, const AffineFit& l,
                                  double K = 0.0,
                                  const GridFunction* f = nullptr);

struct Reconstruction {
  explicit Reconstruction(GridPtr g) : u(std::move(g)) {}
  GridFunction u;        // NaN where the normalized frame has no node
  int covered = 0;
};

/// Inverts the field map onto `orig`: u(y) = divisor * T(map(y)) + l_a + l_b.y.
/// Exact (no interpolation) on nodes whose image is a node of the
/// transformed grid.
Reconstruction rescale_reconstruct(const RescaledProblem& rp, GridPtr orig);

}  // namespace viscolab
