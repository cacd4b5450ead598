#include "viscolab/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viscolab {

void StencilConfig::validate(int dim) const {
  if (dim == 1) return;
  if (m != 4 && m != 8 && m != 16)
    throw std::invalid_argument("StencilConfig: m must be 4, 8 or 16");
}

double second_directional_diff(const GridFunction& u, int node, int k) {
  const Grid& g = u.grid();
  const Arm& ap = g.arm(node, k, 0);
  const Arm& am = g.arm(node, k, 1);
  double u0 = u[node];
  return 2.0 / (ap.len + am.len) *
         ((u[ap.node] - u0) / ap.len + (u[am.node] - u0) / am.len);
}

std::vector<double> directional_diffs(const GridFunction& u, int node, int m) {
  auto dirs = u.grid().dirs_for(m);
  std::vector<double> out;
  out.reserve(dirs.size());
  for (int k : dirs) out.push_back(second_directional_diff(u, node, k));
  return out;
}

SymMatrix hessian_proxy(const GridFunction& u, int node) {
  if (u.grid().dim() == 1) return SymMatrix(second_directional_diff(u, node, 0));
  double dxx = second_directional_diff(u, node, 0);
  double dyy = second_directional_diff(u, node, 1);
  double dpp = second_directional_diff(u, node, 2);  // (1,1)/sqrt(2)
  double dmm = second_directional_diff(u, node, 3);  // (1,-1)/sqrt(2)
  return SymMatrix(dxx, 0.5 * (dpp - dmm), dyy);
}

double pucci_stencil(const GridFunction& u, int node, double lambda,
                     double Lambda, ExtremalSign sign,
                     const StencilConfig& cfg) {
  const Grid& g = u.grid();
  cfg.validate(g.dim());
  auto frames = g.frames(cfg.m);
  bool maximize = sign == ExtremalSign::Plus;
  double best = 0.0;
  bool first = true;
  for (const auto& frame : frames) {
    double v = 0.0;
    for (int k : frame)
      v += pucci_envelope(second_directional_diff(u, node, k), lambda, Lambda,
                          sign);
    if (first || (maximize ? v > best : v < best)) best = v, first = false;
  }
  return best;
}

double upwind_gradient_norm(const GridFunction& u, int node, UpwindBias bias) {
  const Grid& g = u.grid();
  double acc = 0.0;
  int axes = g.dim();
  for (int k = 0; k < axes; ++k) {
    const Arm& ap = g.arm(node, k, 0);
    const Arm& am = g.arm(node, k, 1);
    double fwd = (u[ap.node] - u[node]) / ap.len;   // D+
    double bwd = (u[node] - u[am.node]) / am.len;   // D-
    double slope = bias == UpwindBias::Raise ? std::max({fwd, -bwd, 0.0})
                                             : std::max({bwd, -fwd, 0.0});
    acc += slope * slope;
  }
  return std::sqrt(acc);
}

double upwind_quadratic_hamiltonian(const GridFunction& u, int node, double mu,
                                    UpwindBias bias) {
  double gnorm = upwind_gradient_norm(u, node, bias);
  return mu * gnorm * gnorm;
}

Point central_gradient(const GridFunction& u, int node) {
  const Grid& g = u.grid();
  Point grad{0, 0};
  for (int k = 0; k < g.dim(); ++k) {
    const Arm& ap = g.arm(node, k, 0);
    const Arm& am = g.arm(node, k, 1);
    grad[k] = (u[ap.node] - u[am.node]) / (ap.len + am.len);
  }
  return grad;
}

DiscreteDerivs discrete_derivs(const GridFunction& u, int node,
                               const StencilConfig& cfg) {
  DiscreteDerivs d;
  d.r = u[node];
  d.grad = central_gradient(u, node);
  d.dir_diffs = directional_diffs(u, node, cfg.m);
  d.hessian = hessian_proxy(u, node);
  return d;
}

}  // namespace viscolab
