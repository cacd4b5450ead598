#include "viscolab/rescale.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "viscolab/norms.hpp"

namespace viscolab {

namespace {

/// Field x -> pref * base(scale * x + shift), kind-preserving where possible.
CoefficientField transform_field(const CoefficientField& base, double pref,
                                 double scale, Point shift) {
  switch (base.kind()) {
    case CoefficientField::Kind::Constant:
      return CoefficientField::constant(pref * base.constant_value());
    case CoefficientField::Kind::Singular: {
      // kappa |scale x + shift - c|^{-s} = kappa scale^{-s} |x - c'|^{-s}
      const double s = base.exponent();
      const Point c2 = (1.0 / scale) * (base.center() - shift);
      return CoefficientField::singular(pref * base.kappa() * std::pow(scale, -s),
                                        c2, s);
    }
    case CoefficientField::Kind::Smooth:
    default:
      return CoefficientField::smooth(
          [base, pref, scale, shift](Point x) {
            return pref * base(scale * x + shift);
          },
          base.label() + "~");
  }
}

double lattice_check(const Grid& g, Point x0) {
  const Point o = g.lattice_origin();
  for (int a = 0; a < g.dim(); ++a) {
    const double t = (x0[a] - o[a]) / g.h();
    if (std::abs(t - std::round(t)) > 1e-9)
      throw std::invalid_argument("rescale: centre is not a lattice point");
  }
  return g.h();
}

double node_value(const GridFunction& u, Point y, bool* exact = nullptr) {
  if (auto id = u.grid().node_at(y)) {
    if (exact) *exact = true;
    return u[*id];
  }
  if (exact) *exact = false;
  return u.interpolate(y);
}

}  // namespace

RescaledProblem rescale_blowup(const OperatorSpec& op, const GridFunction& u,
                               const GridFunction& f, Point x0, double sigma,
                               double p, bool unit_floor) {
  const Grid& g = u.grid();
  if (&g != &f.grid())
    throw std::invalid_argument("rescale_blowup: mismatched grids");
  if (!(sigma > 0.0)) throw std::invalid_argument("rescale_blowup: sigma > 0");
  if (!g.domain().contains(x0) ||
      g.domain().boundary_distance(x0) < 2.0 * sigma * (1.0 - 1e-12))
    throw std::invalid_argument("rescale_blowup: B_{2 sigma}(x0) not contained");
  lattice_check(g, x0);
  const int n = g.dim();
  if (n == 1) {
    const double t = 2.0 * sigma / g.h();
    if (std::abs(t - std::round(t)) > 1e-9)
      throw std::invalid_argument("rescale_blowup: 2 sigma / h must be integral in 1d");
  }

  const StructureParams& sp = op.params();
  const double sup_u = u.sup_norm();
  const double f_norm = lp_norm(f, p);
  double d_norm = 0.0;
  if (!sp.d.is_zero()) {
    const CoefficientField d = sp.d.snapped(g);
    d_norm = lp_norm_of(g, [&](Point x) { return d(x); }, p);
  }
  const double W = sup_u + f_norm + d_norm * sp.omega(sup_u);
  const double W_eff = unit_floor ? std::max(W, 1.0) : W;

  const double u0 = node_value(u, x0);
  double supdev = 0.0;
  for (int i = 0; i < g.n_nodes(); ++i)
    if (dist(g.pos(i), x0) <= 2.0 * sigma * (1.0 + 1e-12))
      supdev = std::max(supdev, std::abs(u[i] - u0));
  double N = sigma * W_eff + supdev;
  if (N < 1e-300) N = 1.0;

  // Transformed structure data.
  StructureParams spt = sp;
  spt.mu = N * sp.mu;
  spt.b = transform_field(sp.b, sigma, sigma, x0);
  spt.d = transform_field(sp.d, sigma * sigma, sigma, x0);
  spt.omega = sp.omega.rescaled_blowup(N);

  OperatorSpec opt = [&]() {
    switch (op.kind()) {
      case OperatorSpec::Kind::Extremal:
        return OperatorSpec::extremal(op.sign(), spt);
      case OperatorSpec::Kind::ScaledTrace:
        return OperatorSpec::scaled_trace(
            transform_field(op.trace_coefficient(), 1.0, sigma, x0), spt);
      case OperatorSpec::Kind::Custom:
      default: {
        OperatorSpec base = op;
        const double s2N = sigma * sigma / N;
        return OperatorSpec::custom(
            [base, sigma, N, s2N, u0, x0, n](Point x, double r, Point pvec,
                                             const SymMatrix& X) {
              const Point y = sigma * x + x0;
              const double shiftv = base.eval(y, u0, pt(0.0, 0.0),
                                              SymMatrix::zero(n));
              return s2N * (base.eval(y, N * r + u0, (N / sigma) * pvec,
                                      X.scaled(N / (sigma * sigma))) -
                            shiftv);
            },
            spt, base.label() + "~blowup");
      }
    }
  }();

  Domain dom2 = n == 1 ? Domain::interval(-2.0, 2.0)
                       : Domain::disc(pt(0.0, 0.0), 2.0);
  GridPtr g2 = Grid::build(dom2, g.h() / sigma);

  GridFunction u2(g2), f2(g2);
  for (int i = 0; i < g2->n_nodes(); ++i) {
    const Point y = sigma * g2->pos(i) + x0;
    u2[i] = (node_value(u, y) - u0) / N;
    if (g2->is_interior(i)) {
      const double corr = op.eval(y, u0, pt(0.0, 0.0), SymMatrix::zero(n));
      f2[i] = sigma * sigma / N * (node_value(f, y) - corr);
    }
  }

  RescaledProblem rp(std::move(opt), g2, std::move(u2), std::move(f2));
  rp.kind = RescaleKind::Blowup;
  rp.sigma = sigma;
  rp.N = N;
  rp.W = W_eff;
  rp.supdev = supdev;
  rp.x0 = x0;
  rp.divisor = N;
  rp.l_a = u0;
  return rp;
}

RescaledProblem rescale_iteration(const OperatorSpec& op, const GridFunction& u,
                                  double r_k, double alpha, const AffineFit& l,
                                  double K, const GridFunction* f) {
  const Grid& g = u.grid();
  if (!(r_k > 0.0)) throw std::invalid_argument("rescale_iteration: r_k > 0");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("rescale_iteration: alpha in [0,1)");
  const Point origin = pt(0.0, 0.0);
  if (!g.domain().contains(origin) ||
      g.domain().boundary_distance(origin) < r_k * (1.0 - 1e-12))
    throw std::invalid_argument("rescale_iteration: B_{r_k}(0) not contained");
  lattice_check(g, origin);
  const int n = g.dim();
  if (n == 1) {
    const double t = r_k / g.h();
    if (std::abs(t - std::round(t)) > 1e-9)
      throw std::invalid_argument("rescale_iteration: r_k / h must be integral in 1d");
  }
  if (f && &f->grid() != &g)
    throw std::invalid_argument("rescale_iteration: mismatched grids");

  const StructureParams& sp = op.params();
  const double ra = std::pow(r_k, 1.0 + alpha);

  StructureParams spt = sp;
  spt.mu = ra * sp.mu;
  if (sp.mu * K != 0.0) {
    const double extra = 2.0 * r_k * sp.mu * K;
    if (sp.b.kind() == CoefficientField::Kind::Constant) {
      spt.b = CoefficientField::constant(r_k * sp.b.constant_value() + extra);
    } else {
      const CoefficientField base = sp.b;
      const double r = r_k;
      spt.b = CoefficientField::smooth(
          [base, r, extra](Point x) { return r * base(r * x) + extra; },
          base.label() + "~iter");
    }
  } else {
    spt.b = transform_field(sp.b, r_k, r_k, origin);
  }
  spt.d = transform_field(sp.d, r_k * r_k, r_k, origin);
  spt.omega = sp.omega.rescaled_iteration(r_k, alpha);

  const double la = l.a;
  const Point lb = l.b;
  auto lval = [la, lb](Point y) { return la + dot(lb, y); };

  OperatorSpec opt = [&]() {
    switch (op.kind()) {
      case OperatorSpec::Kind::Extremal:
        return OperatorSpec::extremal(op.sign(), spt);
      case OperatorSpec::Kind::ScaledTrace:
        return OperatorSpec::scaled_trace(
            transform_field(op.trace_coefficient(), 1.0, r_k, origin), spt);
      case OperatorSpec::Kind::Custom:
      default: {
        OperatorSpec base = op;
        const double r = r_k, raa = ra;
        return OperatorSpec::custom(
            [base, r, raa, alpha, la, lb, n](Point x, double v, Point pvec,
                                             const SymMatrix& X) {
              const Point y = r * x;
              const double lv = la + dot(lb, y);
              const double pre = std::pow(r, 1.0 - alpha);
              const double shiftv = base.eval(y, lv, lb, SymMatrix::zero(n));
              return pre * (base.eval(y, raa * v + lv,
                                      std::pow(r, alpha) * pvec + lb,
                                      X.scaled(std::pow(r, alpha - 1.0))) -
                            shiftv);
            },
            spt, base.label() + "~iter");
      }
    }
  }();

  Domain dom2 = n == 1 ? Domain::interval(-1.0, 1.0)
                       : Domain::disc(pt(0.0, 0.0), 1.0);
  GridPtr g2 = Grid::build(dom2, g.h() / r_k);

  GridFunction v2(g2), f2(g2);
  for (int i = 0; i < g2->n_nodes(); ++i) {
    const Point y = r_k * g2->pos(i);
    v2[i] = (node_value(u, y) - lval(y)) / ra;
    if (g2->is_interior(i)) {
      const double fy = f ? node_value(*f, y) : 0.0;
      const double corr = op.eval(y, lval(y), lb, SymMatrix::zero(n));
      f2[i] = std::pow(r_k, 1.0 - alpha) * (fy - corr);
    }
  }

  RescaledProblem rp(std::move(opt), g2, std::move(v2), std::move(f2));
  rp.kind = RescaleKind::Iteration;
  rp.r_k = r_k;
  rp.alpha = alpha;
  rp.divisor = ra;
  rp.l_a = la;
  rp.l_b = lb;
  return rp;
}

Reconstruction rescale_reconstruct(const RescaledProblem& rp, GridPtr orig) {
  Reconstruction out(orig);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double scale = rp.kind == RescaleKind::Blowup ? rp.sigma : rp.r_k;
  for (int i = 0; i < orig->n_nodes(); ++i) {
    const Point y = orig->pos(i);
    const Point x = (1.0 / scale) * (y - rp.x0);
    auto id = rp.grid->node_at(x);
    if (id) {
      out.u[i] = rp.divisor * rp.u[*id] + rp.l_a + dot(rp.l_b, y - rp.x0);
      ++out.covered;
    } else {
      out.u[i] = nan;
    }
  }
  return out;
}

}  // namespace viscolab
