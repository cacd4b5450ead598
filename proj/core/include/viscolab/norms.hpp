#pragma once

#include <functional>

#include "viscolab/grid.hpp"

namespace viscolab {

/// Discrete L^p norm (sum of |g|^p h^n over interior nodes)^{1/p}, optionally
/// restricted to nodes satisfying a predicate. p >= 1.
double lp_norm(const GridFunction& g, double p,
               const std::function<bool(Point)>& where = nullptr);

/// Same quadrature applied to a callable sampled at interior nodes.
double lp_norm_of(const Grid& grid, const std::function<double(Point)>& f,
                  double p, const std::function<bool(Point)>& where = nullptr);

/// Max of |g| over interior nodes within the predicate.
double sup_norm_where(const GridFunction& g,
                      const std::function<bool(Point)>& where = nullptr);

}  // namespace viscolab
