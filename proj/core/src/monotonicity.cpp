#include "viscolab/monotonicity.hpp"

#include <cmath>

#include "viscolab/rng.hpp"

namespace viscolab {

MonotonicityReport monotonicity_audit(const MonotoneScheme& scheme,
                                      int samples, std::uint64_t seed) {
  const Grid& g = *scheme.grid_ptr();
  Rng rng(seed);
  MonotonicityReport rep;

  // Random smooth-ish base fields: low-frequency waves with random phase
  // plus white noise, regenerated every 64 samples.
  GridFunction u(scheme.grid_ptr());
  auto refresh = [&]() {
    double kx = rng.uniform(0.5, 4.0), ky = rng.uniform(0.5, 4.0);
    double ph = rng.uniform(0.0, 6.283185307179586);
    double amp = rng.uniform(0.2, 2.0);
    for (int id = 0; id < g.n_nodes(); ++id) {
      Point p = g.pos(id);
      u[id] = amp * std::sin(kx * p[0] + ky * p[1] + ph) +
              0.1 * rng.normal(0, 1);
    }
  };
  refresh();

  double h = g.h();
  auto dirs = g.dirs_for(scheme.stencil().m);

  for (int s = 0; s < samples; ++s) {
    if (s % 64 == 0 && s > 0) refresh();
    int node = static_cast<int>(rng.integer(g.n_interior()));
    double eps = rng.uniform(0.1 * h * h, 0.5);
    double before = scheme.eval(u, node);
    double scale = 1e-10 * (1.0 + std::abs(before)) / (h * h);

    ++rep.samples;
    if (s % 4 == 3) {
      // Center perturbation: F_h must not increase.
      double old = u[node];
      u[node] = old + eps;
      double after = scheme.eval(u, node);
      u[node] = old;
      if (after > before + scale) {
        ++rep.violation_count;
        if (rep.violations.size() < 32)
          rep.violations.push_back(
              {node, -1, eps, before, after, "center increase raised F_h"});
      }
    } else {
      // Neighbor perturbation: F_h must not decrease.
      int k = dirs[rng.integer(dirs.size())];
      int side = static_cast<int>(rng.integer(2));
      int nb = g.arm(node, k, side).node;
      double old = u[nb];
      u[nb] = old + eps;
      double after = scheme.eval(u, node);
      u[nb] = old;
      if (after < before - scale) {
        ++rep.violation_count;
        if (rep.violations.size() < 32)
          rep.violations.push_back(
              {node, nb, eps, before, after, "neighbor increase lowered F_h"});
      }
    }
  }
  rep.pass = rep.violation_count == 0;
  return rep;
}

}  // namespace viscolab
