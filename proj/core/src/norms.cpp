#include "viscolab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace viscolab {

double lp_norm(const GridFunction& g, double p,
               const std::function<bool(Point)>& where) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const Grid& grid = g.grid();
  double cell = std::pow(grid.h(), grid.dim());
  double acc = 0.0;
  for (int id = 0; id < grid.n_interior(); ++id) {
    if (where && !where(grid.pos(id))) continue;
    acc += std::pow(std::abs(g[id]), p) * cell;
  }
  return std::pow(acc, 1.0 / p);
}

double lp_norm_of(const Grid& grid, const std::function<double(Point)>& f,
                  double p, const std::function<bool(Point)>& where) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  double cell = std::pow(grid.h(), grid.dim());
  double acc = 0.0;
  for (int id = 0; id < grid.n_interior(); ++id) {
    Point x = grid.pos(id);
    if (where && !where(x)) continue;
    acc += std::pow(std::abs(f(x)), p) * cell;
  }
  return std::pow(acc, 1.0 / p);
}

double sup_norm_where(const GridFunction& g,
                      const std::function<bool(Point)>& where) {
  const Grid& grid = g.grid();
  double m = 0.0;
  for (int id = 0; id < grid.n_interior(); ++id) {
    if (where && !where(grid.pos(id))) continue;
    m = std::max(m, std::abs(g[id]));
  }
  return m;
}

}  // namespace viscolab
