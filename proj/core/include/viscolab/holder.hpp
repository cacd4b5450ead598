#pragma once

#include <functional>

#include "viscolab/grid.hpp"

namespace viscolab {

enum class SeminormMethod { Auto, Exact, Multiscale };

struct HolderResult {
  double value = 0.0;
  int node_a = -1, node_b = -1;  // attaining pair
  std::size_t nodes = 0;         // nodes in the selected region
  std::size_t pairs = 0;         // pairs actually examined
  bool exact = true;
};

/// Discrete beta-Hoelder seminorm over nodes selected by `where`
/// (all nodes when empty): sup |u(x)-u(y)| / |x-y|^beta.
/// Exact mode scans all pairs; multiscale mode pairs each node with
/// dyadically spaced lattice neighbours along the direction dictionary.
HolderResult holder_seminorm(const GridFunction& u, double beta,
                             const std::function<bool(const Point&)>& where = {},
                             SeminormMethod method = SeminormMethod::Auto);

}  // namespace viscolab
