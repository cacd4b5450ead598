#pragma once

#include "viscolab/grid.hpp"

namespace viscolab {

/// Strong-maximum-principle trichotomy for a nonnegative supersolution
/// field, plus the boundary (Hopf) quotient at zero boundary nodes.
struct SmpHopfReport {
  bool nonneg_input = false;     // u >= -tol everywhere
  double min_all = 0.0;
  double min_interior = 0.0;
  bool identically_zero = false; // sup |u| <= tol
  bool positive_interior = false;
  int witness_node = -1;         // interior node at the minimum when neither holds
  bool smp_pass = false;         // identically zero or strictly positive inside

  double min_quotient = 0.0;     // min over zero boundary nodes of
                                 // (u(x + h nu) - u(x)) / h, nu inward normal
  double threshold = 0.0;        // pass level (10 h by default)
  int hopf_nodes = 0;            // boundary nodes examined
  bool hopf_pass = false;
  bool hopf_vacuous = false;     // no zero boundary node with a usable normal
};

struct SmpHopfConfig {
  double zero_tol = 0.0;        // 0: 1e-7 * max(1, sup |u|)
  double threshold_factor = 10.0;  // pass level = factor * h
};

SmpHopfReport smp_hopf_check(const GridFunction& u,
                             const SmpHopfConfig& cfg = {});

}  // namespace viscolab
