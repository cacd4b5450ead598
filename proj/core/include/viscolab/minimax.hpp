#pragma once

#include <cstddef>
#include <vector>

#include "viscolab/geometry.hpp"

namespace viscolab {

enum class MinimaxMethod { Auto, Lawson, Dense };

/// Best uniform affine approximant phi(x) = a + b . x to sampled data.
struct AffineFit {
  double a = 0.0;
  Point b{0.0, 0.0};
  double error = 0.0;  // max_i |u_i - phi(x_i)|
  int iterations = 0;
  bool refined = false;  // equioscillation polish accepted

  double eval(const Point& x) const { return a + dot(b, x); }
};

/// Chebyshev (sup-norm) affine fit. Lawson runs iteratively reweighted
/// least squares followed by an exact solve on the active set; Dense
/// enumerates candidate bases and is intended as a reference oracle
/// (1d up to ~500 points, 2d up to ~80).
AffineFit minimax_affine_fit(const std::vector<Point>& xs,
                             const std::vector<double>& us, int dim,
                             MinimaxMethod method = MinimaxMethod::Auto);

}  // namespace viscolab
