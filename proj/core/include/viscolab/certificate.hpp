#pragma once

#include <cstdint>

#include "viscolab/eigen_solve.hpp"

namespace viscolab {

/// Barrier certificate for an upper bound on the principal half-eigenvalue,
/// built from sigma(x) = -(R^2 - rho^2)^2 on B_R(center):
///   V(x) = M^+(D^2 sigma) + b|D sigma| + d w(|sigma|) + (C0/(delta R^2)) c sigma
/// V <= 0 on the ball certifies alpha_1 <= C0 / (delta R^2).
struct SigmaCertificate {
  Point center{0.0, 0.0};
  double R = 0.0;
  double delta = 0.0;      // min of c over the ball nodes
  double gamma = 0.0;      // sup of b over the ball nodes
  double eta = 0.0;        // sup of d over the ball nodes
  double mix = 0.0;        // (n Lambda + gamma R) / (2 lambda + n Lambda + gamma R)
  double C0 = 0.0;
  double bound = 0.0;      // C0 / (delta R^2)
  double max_field = 0.0;  // max of V over the ball nodes
  int nodes = 0;
  bool verified = false;   // max_field <= tol
};

/// Evaluates the certificate with exact sigma derivatives on every grid
/// node inside B_R(center). Throws when c is not bounded away from 0 there
/// or the ball leaves the domain.
SigmaCertificate eigen_upper_bound_sigma(const StructureParams& params,
                                         const CoefficientField& c,
                                         GridPtr grid, Point center, double R);

/// Maximum principle on small domains for F + c u with c of arbitrary sign:
/// seeded batch of solves with f >= 0, psi <= 0; u <= 0 is expected whenever
/// |Omega| <= eps0(C1).
struct MpSmallReport {
  double p = 0.0;
  double C1 = 0.0;
  double eps0 = 0.0;     // measure threshold from the calibrated constant
  double measure = 0.0;  // |Omega|
  bool applicable = false;
  int trials = 0;
  int violations = 0;
  double worst_excess = 0.0;  // max over trials of max u^+
};

MpSmallReport mp_small_domain(const OperatorSpec& F, const CoefficientField& c,
                              GridPtr grid, double p, double C1,
                              int trials = 50, std::uint64_t seed = 5150,
                              SolveConfig cfg = {});

/// Spread of the principal pair over distinct start profiles; small spread
/// backs simplicity of the half-eigenvalue.
struct SimplicityReport {
  int trials = 0;
  double alpha_spread = 0.0;  // max pairwise |alpha_i - alpha_j|
  double phi_spread = 0.0;    // max pairwise sup |phi_i - phi_j|
  double alpha = 0.0;         // first run's value
  bool pass = false;
  bool all_converged = false;
};

SimplicityReport simplicity_check(const OperatorSpec& F,
                                  const CoefficientField& c, GridPtr grid,
                                  ExtremalSign branch, EigenConfig cfg = {},
                                  int trials = 4, std::uint64_t seed = 99,
                                  double rep_tol = 1e-5);

}  // namespace viscolab
