#include "viscolab/nagumo.hpp"

#include <cmath>
#include <stdexcept>

#include "viscolab/norms.hpp"
#include "viscolab/stencil.hpp"

namespace viscolab {

double discrete_w2p_norm(const GridFunction& u, double p) {
  if (p < 1.0) throw std::invalid_argument("discrete_w2p_norm: p >= 1");
  const Grid& g = u.grid();
  const double hn = std::pow(g.h(), g.dim());
  double acc = 0.0;
  for (int i = 0; i < g.n_interior(); ++i) {
    const Point grad = central_gradient(u, i);
    const SymMatrix H = hessian_proxy(u, i);
    acc += (std::pow(std::abs(u[i]), p) + std::pow(norm2(grad), p) +
            std::pow(H.frobenius_norm(), p)) *
           hn;
  }
  return std::pow(acc, 1.0 / p);
}

NagumoReport nagumo_check(const OperatorSpec& op, const Domain& domain,
                          const CoefficientField& f,
                          const std::function<double(Point)>& psi, double p,
                          const std::vector<double>& hs, SolveConfig cfg) {
  if (hs.size() < 2) throw std::invalid_argument("nagumo_check: need >= 2 grids");
  NagumoReport rep;
  rep.p = p;
  const StructureParams& sp = op.params();

  for (double h : hs) {
    GridPtr grid = Grid::build(domain, h);
    Solution sol = solve_dirichlet(op, grid, f, psi, cfg);

    NagumoLevel lv;
    lv.h = h;
    lv.converged = sol.converged;
    lv.w2p = discrete_w2p_norm(sol.u, p);
    lv.sup_u = sol.u.sup_norm();
    const CoefficientField fs = f.snapped(*grid);
    lv.f_norm = lp_norm_of(*grid, [&](Point x) { return fs(x); }, p);
    lv.psi_w2p = discrete_w2p_norm(GridFunction::sample(grid, psi), p);
    if (!sp.d.is_zero()) {
      const CoefficientField d = sp.d.snapped(*grid);
      lv.d_part = lp_norm_of(*grid, [&](Point x) { return d(x); }, p) *
                  sp.omega(lv.sup_u);
    }
    lv.bracket = lv.sup_u + lv.f_norm + lv.psi_w2p + lv.d_part;
    lv.ratio = lv.bracket > 0.0 ? lv.w2p / lv.bracket : 0.0;
    rep.levels.push_back(lv);
  }

  const double first = rep.levels.front().ratio;
  const double last = rep.levels.back().ratio;
  rep.growth = first > 0.0 ? last / first : (last > 0.0 ? 1e300 : 1.0);
  // Stable: the ratio ladder does not keep growing. A strictly increasing
  // ladder with more than 25% total growth signals unbounded W^{2,p} mass.
  bool increasing = true;
  for (std::size_t k = 1; k < rep.levels.size(); ++k)
    if (rep.levels[k].ratio <= rep.levels[k - 1].ratio * (1.0 + 1e-12))
      increasing = false;
  rep.refinement_stable = !(increasing && rep.growth > 1.25);
  return rep;
}

}  // namespace viscolab
