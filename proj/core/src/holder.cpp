#include "viscolab/holder.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace viscolab {

namespace {

constexpr std::size_t kExactCap = 4000;  // pair scan up to ~8e6 pairs

}  // namespace

HolderResult holder_seminorm(const GridFunction& u, double beta,
                             const std::function<bool(const Point&)>& where,
                             SeminormMethod method) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("holder_seminorm: beta must lie in (0,1]");
  const Grid& g = u.grid();

  std::vector<int> sel;
  sel.reserve(g.n_nodes());
  for (int i = 0; i < g.n_nodes(); ++i)
    if (!where || where(g.pos(i))) sel.push_back(i);

  HolderResult res;
  res.nodes = sel.size();
  if (sel.size() < 2) return res;

  bool exact = (method == SeminormMethod::Exact) ||
               (method == SeminormMethod::Auto && sel.size() <= kExactCap);
  res.exact = exact;

  auto consider = [&](int a, int b) {
    const double d = dist(g.pos(a), g.pos(b));
    if (d <= 0.0) return;
    const double q = std::abs(u[a] - u[b]) / std::pow(d, beta);
    ++res.pairs;
    if (q > res.value) {
      res.value = q;
      res.node_a = a;
      res.node_b = b;
    }
  };

  if (exact) {
    for (std::size_t i = 0; i < sel.size(); ++i)
      for (std::size_t j = i + 1; j < sel.size(); ++j) consider(sel[i], sel[j]);
    return res;
  }

  // Multiscale ladder: pair each selected node with nodes reached by
  // 2^j lattice steps along every dictionary direction.
  std::vector<char> in_sel(g.n_nodes(), 0);
  for (int i : sel) in_sel[static_cast<std::size_t>(i)] = 1;
  const double diam = g.domain().diameter();
  for (int i : sel) {
    const Point x = g.pos(i);
    for (int k = 0; k < g.n_line_dirs(); ++k) {
      const Point e = g.dir_unit(k);
      const double step0 = g.dir_step(k);
      for (int j = 0; j < 24; ++j) {
        const double step = static_cast<double>(1 << j) * step0;
        if (step > diam * 1.5) break;
        auto nb = g.node_at(x + step * e);
        if (!nb || !in_sel[static_cast<std::size_t>(*nb)]) continue;
        consider(i, *nb);
      }
    }
    // Boundary arms adjacent to interior nodes; a pure lattice walk
    // misses the snapped nodes on curved pieces.
    if (g.is_interior(i)) {
      for (int k = 0; k < g.n_line_dirs(); ++k)
        for (int side = 0; side < 2; ++side) {
          const Arm& arm = g.arm(i, k, side);
          if (arm.node >= 0 && in_sel[static_cast<std::size_t>(arm.node)])
            consider(i, arm.node);
        }
    }
  }
  return res;
}

}  // namespace viscolab
