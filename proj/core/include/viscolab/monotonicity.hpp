#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viscolab/scheme.hpp"

namespace viscolab {

struct MonotonicityViolation {
  int node = -1;
  int neighbor = -1;     // -1 for the center perturbation
  double eps = 0.0;
  double before = 0.0;
  double after = 0.0;
  std::string what;
};

struct MonotonicityReport {
  bool pass = true;
  int samples = 0;
  std::vector<MonotonicityViolation> violations;  // capped at 32 entries
  int violation_count = 0;
};

/// Degenerate-ellipticity audit of the assembled scheme: for random interior
/// nodes, random base fields and random positive perturbations,
///   raising one neighbor value must not lower F_h at the node, and
///   raising the node's own value must not raise F_h at the node.
/// Both directions together are the monotonicity the convergence theory and
/// the comparison-based iteration rely on.
MonotonicityReport monotonicity_audit(const MonotoneScheme& scheme,
                                      int samples = 10000,
                                      std::uint64_t seed = 77);

}  // namespace viscolab
