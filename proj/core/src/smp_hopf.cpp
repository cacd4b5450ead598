#include "viscolab/smp_hopf.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace viscolab {

namespace {

/// Inward unit normal at a boundary point; nullopt at corners and other
/// points without a well-defined normal.
std::optional<Point> inward_normal(const Domain& d, Point x) {
  const double tol = 1e-9 * std::max(d.diameter(), 1.0);
  switch (d.shape()) {
    case Domain::Shape::Interval: {
      if (std::abs(x[0] - d.box_lo()[0]) < tol) return pt(1.0);
      if (std::abs(x[0] - d.box_hi()[0]) < tol) return pt(-1.0);
      return std::nullopt;
    }
    case Domain::Shape::Rectangle: {
      const Point lo = d.box_lo(), hi = d.box_hi();
      const bool on_lx = std::abs(x[0] - lo[0]) < tol;
      const bool on_hx = std::abs(x[0] - hi[0]) < tol;
      const bool on_ly = std::abs(x[1] - lo[1]) < tol;
      const bool on_hy = std::abs(x[1] - hi[1]) < tol;
      if ((on_lx || on_hx) && (on_ly || on_hy)) return std::nullopt;  // corner
      if (on_lx) return pt(1.0, 0.0);
      if (on_hx) return pt(-1.0, 0.0);
      if (on_ly) return pt(0.0, 1.0);
      if (on_hy) return pt(0.0, -1.0);
      return std::nullopt;
    }
    case Domain::Shape::Disc: {
      const Point v = d.center() - x;
      const double n = norm2(v);
      if (n < tol) return std::nullopt;
      return (1.0 / n) * v;
    }
    case Domain::Shape::HalfDisc:
    default: {
      const bool on_flat = std::abs(x[1] + d.nu()) < tol;
      const bool on_arc = std::abs(norm2(x) - d.radius()) < tol;
      if (on_flat && on_arc) return std::nullopt;  // junction
      if (on_flat) return pt(0.0, 1.0);
      const double n = norm2(x);
      if (n < tol) return std::nullopt;
      return (-1.0 / n) * x;
    }
  }
}

}  // namespace

SmpHopfReport smp_hopf_check(const GridFunction& u, const SmpHopfConfig& cfg) {
  const Grid& g = u.grid();
  SmpHopfReport rep;
  const double sup = u.sup_norm();
  const double tol = cfg.zero_tol > 0.0 ? cfg.zero_tol
                                        : 1e-7 * std::max(1.0, sup);

  rep.min_all = u.min_all();
  rep.min_interior = g.n_interior() > 0 ? u.min_interior() : 0.0;
  rep.nonneg_input = rep.min_all >= -tol;
  rep.identically_zero = sup <= tol;
  rep.positive_interior = rep.min_interior > tol;
  rep.smp_pass = rep.identically_zero || rep.positive_interior;
  if (!rep.smp_pass) {
    for (int i = 0; i < g.n_interior(); ++i)
      if (u[i] <= tol) {
        rep.witness_node = i;
        break;
      }
  }

  rep.threshold = cfg.threshold_factor * g.h();
  rep.min_quotient = std::numeric_limits<double>::infinity();
  for (int i = g.n_interior(); i < g.n_nodes(); ++i) {
    if (std::abs(u[i]) > tol) continue;  // Hopf applies where u hits zero
    const Point x = g.pos(i);
    auto nu = inward_normal(g.domain(), x);
    if (!nu) continue;
    const Point probe = x + g.h() * (*nu);
    if (!g.domain().contains(probe)) continue;
    const double q = (u.interpolate(probe) - u[i]) / g.h();
    rep.min_quotient = std::min(rep.min_quotient, q);
    ++rep.hopf_nodes;
  }
  if (rep.hopf_nodes == 0) {
    rep.hopf_vacuous = true;
    rep.min_quotient = 0.0;
    rep.hopf_pass = rep.identically_zero;
  } else {
    rep.hopf_pass = rep.identically_zero || rep.min_quotient >= rep.threshold;
  }
  return rep;
}

}  // namespace viscolab
