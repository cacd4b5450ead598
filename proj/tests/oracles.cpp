#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace viscolab::oracle {

namespace {

double trace_rotated(const SymMatrix& X, double theta, double d1, double d2) {
  // tr(A X) with A = R^T diag(d1, d2) R, R the rotation by theta:
  // A = d1 e e^T + d2 e_perp e_perp^T.
  const double c = std::cos(theta), s = std::sin(theta);
  const double x11 = X(0, 0), x22 = X(1, 1), x12 = X(0, 1);
  const double q1 = x11 * c * c + 2.0 * x12 * c * s + x22 * s * s;
  const double q2 = x11 * s * s - 2.0 * x12 * c * s + x22 * c * c;
  return d1 * q1 + d2 * q2;
}

}  // namespace

PucciSamples pucci_sampling(const SymMatrix& X, double lambda, double Lambda,
                            int random_samples, Rng& rng) {
  if (X.n() != 2) throw std::invalid_argument("pucci_sampling: 2x2 only");
  PucciSamples out;
  out.max_sampled = out.best_structured =
      -std::numeric_limits<double>::infinity();
  out.min_sampled = out.worst_structured =
      std::numeric_limits<double>::infinity();

  const double pi = 3.14159265358979323846;
  std::vector<double> angles;
  for (int k = 0; k < 180; ++k) angles.push_back(pi * k / 180.0);
  // Exact eigenframe angle of X; the envelope optimum lives in this frame.
  angles.push_back(0.5 * std::atan2(2.0 * X(0, 1), X(0, 0) - X(1, 1)));

  const double corners[2] = {lambda, Lambda};
  for (double th : angles)
    for (double d1 : corners)
      for (double d2 : corners) {
        const double v = trace_rotated(X, th, d1, d2);
        out.best_structured = std::max(out.best_structured, v);
        out.worst_structured = std::min(out.worst_structured, v);
      }
  out.max_sampled = out.best_structured;
  out.min_sampled = out.worst_structured;

  for (int k = 0; k < random_samples; ++k) {
    const double th = rng.uniform(0.0, pi);
    const double d1 = rng.uniform(lambda, Lambda);
    const double d2 = rng.uniform(lambda, Lambda);
    const double v = trace_rotated(X, th, d1, d2);
    out.max_sampled = std::max(out.max_sampled, v);
    out.min_sampled = std::min(out.min_sampled, v);
  }
  return out;
}

double tridiag_smallest_eigenvalue(int n) {
  if (n < 2) throw std::invalid_argument("tridiag: n >= 2");
  const double h = 1.0 / n;
  const double diag = 2.0 / (h * h), off = -1.0 / (h * h);
  const int m = n - 1;

  // Sturm count: number of eigenvalues of the tridiagonal below x.
  const auto count_below = [&](double x) {
    int cnt = 0;
    double d = diag - x;
    if (d < 0.0) ++cnt;
    for (int i = 1; i < m; ++i) {
      // LDL^T pivot recurrence; a zero pivot is nudged.
      if (std::abs(d) < 1e-300) d = std::copysign(1e-300, d == 0.0 ? -1.0 : d);
      d = (diag - x) - off * off / d;
      if (d < 0.0) ++cnt;
    }
    return cnt;
  };

  double lo = 0.0, hi = diag;  // Gershgorin upper bound exceeds all eigenvalues
  while (count_below(hi) < 1) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double bessel_j0_squared() {
  double lo = 2.0, hi = 3.0;
  if (!(std::cyl_bessel_j(0.0, lo) > 0.0 && std::cyl_bessel_j(0.0, hi) < 0.0))
    throw std::runtime_error("bessel bracket failed");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::cyl_bessel_j(0.0, mid) > 0.0 ? lo : hi) = mid;
  }
  const double z0 = 0.5 * (lo + hi);
  return z0 * z0;
}

double RadialProfile::operator()(double r) const {
  if (values.empty()) return 0.0;
  const double t = std::clamp(r / r_max, 0.0, 1.0) * (values.size() - 1);
  const auto i = static_cast<std::size_t>(t);
  if (i + 1 >= values.size()) return values.back();
  const double w = t - static_cast<double>(i);
  return (1.0 - w) * values[i] + w * values[i + 1];
}

RadialProfile pucci_radial_profile(double lambda, double Lambda,
                                   const std::function<double(double)>& f,
                                   double r_max, int steps) {
  const auto phi = [&](double s) {
    return s >= 0.0 ? Lambda * s : lambda * s;
  };
  const auto phi_inv = [&](double g) {
    return g >= 0.0 ? g / Lambda : g / lambda;
  };
  // w' = g(r, w) with w = u'; near r = 0 the tangential curvature w/r tends
  // to u''(0) fixed by phi(u''(0)) = f(0)/2.
  const double w0_slope = phi_inv(0.5 * f(0.0));
  const auto slope = [&](double r, double w) {
    if (r < 1e-12) return w0_slope;
    return phi_inv(f(r) - phi(w / r));
  };

  RadialProfile out;
  out.r_max = r_max;
  out.values.assign(static_cast<std::size_t>(steps) + 1, 0.0);
  const double dr = r_max / steps;
  double w = 0.0, u = 0.0;
  out.values[0] = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double r = i * dr;
    // RK4 on the decoupled pair (u, w).
    const double k1 = slope(r, w);
    const double k2 = slope(r + 0.5 * dr, w + 0.5 * dr * k1);
    const double k3 = slope(r + 0.5 * dr, w + 0.5 * dr * k2);
    const double k4 = slope(r + dr, w + dr * k3);
    const double w_mid = w + 0.5 * dr * k1;  // midpoint slope for u update
    u += dr * (w + 2.0 * w_mid + 2.0 * (w + 0.5 * dr * k2) + (w + dr * k3)) /
         6.0;
    w += dr * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    out.values[static_cast<std::size_t>(i) + 1] = u;
  }
  // Dirichlet normalization u(r_max) = 0; the equation has no zero-order
  // term, so a constant shift keeps it exact.
  const double shift = out.values.back();
  for (double& v : out.values) v -= shift;
  return out;
}

double holder_exhaustive(const GridFunction& u, double beta) {
  const Grid& g = u.grid();
  double best = 0.0;
  for (int a = 0; a < g.n_nodes(); ++a)
    for (int b = a + 1; b < g.n_nodes(); ++b) {
      const double d = dist(g.pos(a), g.pos(b));
      if (d <= 0.0) continue;
      best = std::max(best, std::abs(u[a] - u[b]) / std::pow(d, beta));
    }
  return best;
}

double minimax_1d_grid_search(const std::vector<double>& xs,
                              const std::vector<double>& us) {
  if (xs.size() != us.size() || xs.empty())
    throw std::invalid_argument("minimax grid search: bad input");
  const auto err = [&](double a, double b) {
    double e = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      e = std::max(e, std::abs(us[i] - a - b * xs[i]));
    return e;
  };
  double u_lo = *std::min_element(us.begin(), us.end());
  double u_hi = *std::max_element(us.begin(), us.end());
  double x_lo = *std::min_element(xs.begin(), xs.end());
  double x_hi = *std::max_element(xs.begin(), xs.end());
  const double span = std::max({u_hi - u_lo, 1e-9});
  const double xspan = std::max(x_hi - x_lo, 1e-9);

  double a0 = 0.5 * (u_lo + u_hi), b0 = 0.0;
  double ra = span, rb = 2.0 * span / xspan;
  double best = err(a0, b0);
  // Coarse-to-fine refinement around the best cell; 9 rounds of a 41x41 scan
  // shrink the window by 5x each time.
  for (int round = 0; round < 9; ++round) {
    double ba = a0, bb = b0;
    for (int i = -20; i <= 20; ++i)
      for (int j = -20; j <= 20; ++j) {
        const double a = a0 + ra * i / 20.0, b = b0 + rb * j / 20.0;
        const double e = err(a, b);
        if (e < best) {
          best = e;
          ba = a;
          bb = b;
        }
      }
    a0 = ba;
    b0 = bb;
    ra /= 5.0;
    rb /= 5.0;
  }
  return best;
}

}  // namespace viscolab::oracle
