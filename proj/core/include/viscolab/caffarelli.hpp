#pragma once

#include <vector>

#include "viscolab/grid.hpp"
#include "viscolab/minimax.hpp"

namespace viscolab {

/// Per-radius record of the dyadic affine-approximation ladder.
struct ScaleFit {
  double r = 0.0;
  std::size_t nodes = 0;
  AffineFit fit;        // coordinates relative to the centre
  bool usable = false;  // enough nodes and error above noise floor
};

struct RegularityFit {
  Point center{0.0, 0.0};
  bool boundary = false;  // centre sits on the boundary
  std::vector<ScaleFit> scales;
  double alpha_raw = 0.0;   // log-log regression slope minus one, floored at 0
  double alpha_est = 0.0;   // snapped down to the exponent grid
  double C_est = 0.0;       // sup_k E_k / r_k^{1+alpha_est}
  std::vector<double> b_increments;  // |b_k - b_{k-1}| over consecutive scales
  double K2_est = 0.0;               // sup_k |b_k - b_{k-1}| / r_{k-1}^{alpha_est}
  bool degenerate = false;           // all errors at noise floor (affine data)
};

struct CaffarelliConfig {
  double r0 = 1.0;
  double gamma = 0.25;
  int K = 6;                  // number of dyadic scales r0 * gamma^k
  std::size_t min_nodes = 10; // smallest usable ball
  std::vector<double> alpha_grid = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30,
                                    0.35, 0.40, 0.45, 0.50, 0.55, 0.60,
                                    0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
  MinimaxMethod method = MinimaxMethod::Auto;
};

/// Fits best affine approximants on shrinking balls around `center` and
/// extracts a growth exponent from the error ladder. Nodes on the
/// boundary participate, so a centre on a flat boundary piece probes the
/// one-sided (half-ball) geometry automatically.
RegularityFit caffarelli_fit(const GridFunction& u, const Point& center,
                             const CaffarelliConfig& cfg = {});

}  // namespace viscolab
