#include "viscolab/certificate.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "viscolab/norms.hpp"
#include "viscolab/rng.hpp"

namespace viscolab {

SigmaCertificate eigen_upper_bound_sigma(const StructureParams& params,
                                         const CoefficientField& c,
                                         GridPtr grid, Point center, double R) {
  params.validate();
  if (!(R > 0.0)) throw std::invalid_argument("sigma certificate: R > 0");
  const Grid& g = *grid;
  if (!g.domain().contains(center) ||
      g.domain().boundary_distance(center) < R * (1.0 - 1e-12))
    throw std::invalid_argument("sigma certificate: B_R(center) not contained");

  const int n = g.dim();
  const CoefficientField cs = c.snapped(g);
  const CoefficientField bs = params.b.snapped(g);
  const CoefficientField ds = params.d.snapped(g);

  SigmaCertificate cert;
  cert.center = center;
  cert.R = R;

  std::vector<int> ball;
  double cmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n_nodes(); ++i) {
    const Point x = g.pos(i);
    if (dist(x, center) >= R * (1.0 + 1e-12)) continue;
    ball.push_back(i);
    cmin = std::min(cmin, cs(x));
    cert.gamma = std::max(cert.gamma, bs(x));
    cert.eta = std::max(cert.eta, ds(x));
  }
  cert.nodes = static_cast<int>(ball.size());
  if (ball.empty()) throw std::invalid_argument("sigma certificate: empty ball");
  if (!(cmin > 0.0))
    throw std::invalid_argument("sigma certificate: weight not positive on ball");
  cert.delta = cmin;

  const double nL = n * params.Lambda + cert.gamma * R;
  cert.mix = nL / (2.0 * params.lambda + nL);
  cert.C0 = 4.0 * nL / (1.0 - cert.mix) +
            cert.eta * params.omega(1.0) * R * R;
  cert.bound = cert.C0 / (cert.delta * R * R);

  double vmax = -std::numeric_limits<double>::infinity();
  for (int i : ball) {
    const Point x = g.pos(i);
    const Point rv = x - center;
    const double rho2 = dot(rv, rv);
    const double R2 = R * R;
    const double sigma = -(R2 - rho2) * (R2 - rho2);
    const double grad_norm = 4.0 * (R2 - rho2) * std::sqrt(rho2);
    SymMatrix H = SymMatrix::zero(n);
    if (n == 1) {
      H = SymMatrix(4.0 * R2 - 12.0 * rho2);
    } else {
      const double rho = std::sqrt(rho2);
      SymMatrix iso(4.0 * (R2 - rho2), 0.0, 4.0 * (R2 - rho2));
      if (rho > 0.0) {
        const Point v = (1.0 / rho) * rv;
        H = iso - SymMatrix::outer(v, 8.0 * rho2);
      } else {
        H = iso;
      }
    }
    const double V = pucci(H, params.lambda, params.Lambda, ExtremalSign::Plus) +
                     bs(x) * grad_norm + ds(x) * params.omega(-sigma) +
                     cert.bound * cs(x) * sigma;
    vmax = std::max(vmax, V);
  }
  cert.max_field = vmax;
  const double scale = 1.0 + 4.0 * n * params.Lambda * R * R + cert.C0;
  cert.verified = vmax <= 1e-9 * scale;
  return cert;
}

MpSmallReport mp_small_domain(const OperatorSpec& F, const CoefficientField& c,
                              GridPtr grid, double p, double C1, int trials,
                              std::uint64_t seed, SolveConfig cfg) {
  const Grid& g = *grid;
  const int n = g.dim();
  if (!(p > n))
    throw std::invalid_argument("mp_small_domain: needs p > dimension");
  if (!(C1 > 0.0)) throw std::invalid_argument("mp_small_domain: C1 > 0");

  MpSmallReport rep;
  rep.p = p;
  rep.C1 = C1;
  rep.trials = trials;
  rep.measure = g.domain().measure();

  const CoefficientField cs = c.snapped(g);
  const double cplus =
      lp_norm_of(g, [&](Point x) { return pos_part(cs(x)); }, p);
  if (cplus > 0.0) {
    const double base = 1.0 / (2.0 * C1 * g.domain().diameter() * cplus);
    rep.eps0 = std::pow(base, p / (p - n));
  } else {
    rep.eps0 = std::numeric_limits<double>::infinity();
  }
  rep.applicable = rep.measure <= rep.eps0;

  DirichletSolver solver(F, grid, cfg);
  std::vector<double> c_int(g.n_interior());
  for (int i = 0; i < g.n_interior(); ++i) c_int[i] = cs(g.pos(i));
  solver.mutable_scheme().set_linear_zero_order(c_int);

  Rng rng(seed);
  int failed = 0;
  for (int t = 0; t < trials; ++t) {
    const double af = rng.uniform(0.2, 2.0);
    const double kf1 = rng.uniform(0.5, 4.0), kf2 = rng.uniform(0.5, 4.0);
    const double ph1 = rng.uniform(0.0, 6.28), ph2 = rng.uniform(0.0, 6.28);
    const double ap = rng.uniform(0.0, 1.0);
    GridFunction f(grid), psi(grid);
    for (int i = 0; i < g.n_nodes(); ++i) {
      const Point x = g.pos(i);
      const double w = std::sin(kf1 * x[0] + ph1) * std::cos(kf2 * x[1] + ph2);
      if (g.is_interior(i)) f[i] = af * (1.1 + w);  // >= 0.1 af
      else psi[i] = -ap * (1.05 + w);               // <= -0.05 ap
    }
    Solution sol = solver.solve(f, psi);
    if (!sol.converged) {
      ++failed;
      continue;
    }
    const double excess = std::max(sol.u.max_all(), 0.0);
    const double tol = 1e-7 * std::max(1.0, sol.u.sup_norm());
    if (excess > tol) ++rep.violations;
    rep.worst_excess = std::max(rep.worst_excess, excess);
  }
  rep.trials = trials - failed;
  return rep;
}

SimplicityReport simplicity_check(const OperatorSpec& F,
                                  const CoefficientField& c, GridPtr grid,
                                  ExtremalSign branch, EigenConfig cfg,
                                  int trials, std::uint64_t seed,
                                  double rep_tol) {
  SimplicityReport rep;
  rep.trials = trials;
  rep.all_converged = true;

  Rng rng(seed);
  std::vector<EigenPair> pairs;
  for (int t = 0; t < trials; ++t) {
    EigenConfig run = cfg;
    if (t == 1) {
      auto flat = std::make_shared<GridFunction>(grid);
      for (int i = 0; i < grid->n_interior(); ++i) (*flat)[i] = 1.0;
      run.initial = flat;
    } else if (t >= 2) {
      auto rnd = std::make_shared<GridFunction>(grid);
      for (int i = 0; i < grid->n_interior(); ++i)
        (*rnd)[i] = rng.uniform(0.1, 1.0);
      run.initial = rnd;
    }
    pairs.push_back(eigen_solve(F, c, grid, branch, run));
    rep.all_converged = rep.all_converged && pairs.back().converged;
  }
  rep.alpha = pairs.front().alpha;

  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      rep.alpha_spread =
          std::max(rep.alpha_spread, std::abs(pairs[a].alpha - pairs[b].alpha));
      double dphi = 0.0;
      for (int i = 0; i < grid->n_nodes(); ++i)
        dphi = std::max(dphi, std::abs(pairs[a].phi[i] - pairs[b].phi[i]));
      rep.phi_spread = std::max(rep.phi_spread, dphi);
    }
  const double tol_field = cfg.tol_field > 0.0 ? cfg.tol_field : 1e-5;
  rep.pass = rep.all_converged &&
             rep.alpha_spread <= rep_tol * std::max(1.0, std::abs(rep.alpha)) &&
             rep.phi_spread <= 10.0 * tol_field;
  return rep;
}

}  // namespace viscolab
