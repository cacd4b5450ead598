#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "viscolab/solver.hpp"

namespace viscolab {

struct EigenConfig {
  double tol_alpha = 1e-6;  // relative stall tolerance on the eigenvalue
  double tol_field = 1e-5;  // sup-norm stall tolerance on the profile
  int max_power_steps = 400;
  std::vector<double> eps_schedule;  // default 1, 1/2, ..., 2^{-10}
  SolveConfig solver;
  std::shared_ptr<const GridFunction> initial;  // start profile override
};

struct PowerStep {
  double alpha_est = 0.0;  // 1 / max U; +inf when the weight vanishes
  bool positive = true;    // max U > 0
  GridFunction next;       // U / max U (unchanged input when degenerate)

  explicit PowerStep(GridFunction g) : next(std::move(g)) {}
};

/// One inverse-power step for the positive branch: solve F_h[U] = -w u
/// with zero boundary data, normalize by the interior max.
/// `weight` holds w at interior nodes.
PowerStep power_step(DirichletSolver& solver, const std::vector<double>& weight,
                     const GridFunction& u);

struct EigenPair {
  double alpha = 0.0;
  GridFunction phi;  // principal profile; max(+-phi) = 1 per branch
  ExtremalSign branch = ExtremalSign::Plus;
  double residual = 0.0;  // sup |F_h[phi] + alpha c phi| over interior
  int steps = 0;          // power steps across the whole schedule
  bool converged = false;
  std::vector<std::pair<double, double>> schedule;  // (eps, alpha at stall)

  explicit EigenPair(GridPtr g) : phi(std::move(g)) {}
};

/// Principal half-eigenvalue of F with weight c on the grid, for either
/// branch. The minus branch runs the companion operator on the mirrored
/// problem and mirrors back, so one positive-profile iteration serves both.
/// F must be 1-homogeneous (mu = 0, Lipschitz modulus) and c >= 0.
EigenPair eigen_solve(const OperatorSpec& F, const CoefficientField& c,
                      GridPtr grid, ExtremalSign branch,
                      const EigenConfig& cfg = {});

}  // namespace viscolab
