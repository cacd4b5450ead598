#pragma once

#include "viscolab/oscillation.hpp"
#include "viscolab/solver.hpp"

namespace viscolab {

/// Smallness quantities that control the distance between the full problem
/// and its frozen pure-second-order companion.
struct GapInputs {
  double beta_bar_norm = 0.0;  // ||beta_bar(., anchor)||_p over the domain
  double f_norm = 0.0;         // ||f||_p
  double b_term = 0.0;         // ||b||_p (|B| + 1)
  double mu_term = 0.0;        // mu (|B|^2 + |B| + 1)
  double d_term = 0.0;         // w(1) ||d||_p (|A| + |B| + 1)
  double total = 0.0;
};

struct GapReport {
  double gap = 0.0;  // max over nodes of |v - h|
  GapInputs inputs;
  Point anchor{0.0, 0.0};
  double v_residual = 0.0;
  double h_residual = 0.0;
  bool converged = false;
};

struct GapConfig {
  double p = 2.0;
  double A = 0.0;      // affine offset value (see below)
  Point B{0.0, 0.0};   // affine offset slope
  SolveConfig solve;
  OscillationConfig oscillation;
  int beta_quad_cap = 4000;  // interior nodes entering the beta_bar quadrature
};

/// Solves the full problem F = f and the frozen companion
/// F(anchor, 0, 0, D^2 h) = 0 with the same boundary data and reports
/// max |v - h| alongside the smallness inputs. The affine offset (A, B)
/// enters the inputs; offsets are only accepted when the operator has no
/// lower-order terms, in which case the shifted and plain problems agree.
GapReport approximation_gap(const OperatorSpec& F, GridPtr grid,
                            const CoefficientField& f,
                            const std::function<double(Point)>& psi,
                            const GapConfig& cfg = {});

}  // namespace viscolab
