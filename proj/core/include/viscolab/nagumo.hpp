#pragma once

#include <vector>

#include "viscolab/solver.hpp"

namespace viscolab {

/// Discrete W^{2,p} norm: (sum over interior nodes of
/// (|u|^p + |Du|^p + ||D^2 u||_F^p) h^n)^{1/p} with centered gradients and
/// the Hessian proxy.
double discrete_w2p_norm(const GridFunction& u, double p);

struct NagumoLevel {
  double h = 0.0;
  double w2p = 0.0;      // ||u||_{W^{2,p}} discrete
  double bracket = 0.0;  // ||u||_inf + ||f||_p + ||psi||_{W^{2,p}} + ||d||_p w(||u||_inf)
  double ratio = 0.0;    // w2p / bracket
  double sup_u = 0.0, f_norm = 0.0, psi_w2p = 0.0, d_part = 0.0;
  bool converged = false;
};

struct NagumoReport {
  double p = 0.0;
  std::vector<NagumoLevel> levels;
  double growth = 0.0;           // last ratio / first ratio
  bool refinement_stable = false;  // ratios do not blow up under refinement
};

/// Solves the problem on each grid size and compares the interior W^{2,p}
/// mass of the solution against the data bracket. `psi` must extend to the
/// closed domain (its W^{2,p} norm is taken over the same grid).
NagumoReport nagumo_check(const OperatorSpec& op, const Domain& domain,
                          const CoefficientField& f,
                          const std::function<double(Point)>& psi, double p,
                          const std::vector<double>& hs = {1.0 / 32, 1.0 / 64,
                                                           1.0 / 128},
                          SolveConfig cfg = {});

}  // namespace viscolab
