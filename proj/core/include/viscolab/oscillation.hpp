#pragma once

#include <cstdint>

#include "viscolab/domain.hpp"
#include "viscolab/operator_spec.hpp"

namespace viscolab {

/// Which oscillation quotient: Beta divides |F(x,0,0,X) - F(x0,0,0,X)| by
/// ||X||, BetaBar by ||X|| + 1 (so beta_bar <= beta pointwise).
enum class OscillationVariant { Beta, BetaBar };

enum class MatrixNormKind { Spectral, Frobenius };

struct OscillationConfig {
  MatrixNormKind norm = MatrixNormKind::Spectral;
  int rotation_angles = 32;       // frames for the structured family (2D)
  int ladder_lo = -4;             // diagonal entries +-2^k, k in [lo, hi]
  int ladder_hi = 4;
  int random_samples = 512;
  std::uint64_t seed = 11;
};

struct OscillationResult {
  double value = 0.0;
  SymMatrix argmax;
};

/// Numerical sup of the oscillation quotient over the structured family
/// (rotated sign-symmetric dyadic diagonals plus +-I) and seeded random
/// matrices.
OscillationResult oscillation_beta(const OperatorSpec& F, int dim, Point x,
                                   Point x0,
                                   OscillationVariant variant,
                                   const OscillationConfig& cfg = {});

struct HThetaReport {
  double value = 0.0;   // ((1/r^n) integral over B_r(x0) ∩ Omega of beta^p)^{1/p}
  double theta = 0.0;
  bool within = false;  // value <= theta
  int quad_nodes = 0;
  double r = 0.0;
  double p = 0.0;
};

/// Normalized local L^p average of beta(., x0) over B_r(x0) ∩ Omega by
/// midpoint quadrature on a sub-lattice of spacing 2r / quad_per_axis.
/// Throws when the ball does not meet the domain.
HThetaReport h_theta_report(const OperatorSpec& F, const Domain& domain,
                            Point x0, double r, double p, double theta,
                            int quad_per_axis = 33,
                            const OscillationConfig& cfg = {});

}  // namespace viscolab
