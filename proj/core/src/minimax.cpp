#include "viscolab/minimax.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace viscolab {

namespace {

double global_error(const std::vector<Point>& xs, const std::vector<double>& us,
                    const AffineFit& fit) {
  double e = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    e = std::max(e, std::abs(us[i] - fit.eval(xs[i])));
  return e;
}

AffineFit lawson_fit(const std::vector<Point>& xs, const std::vector<double>& us,
                     int dim) {
  const std::size_t n = xs.size();
  const int cols = dim + 1;
  Eigen::MatrixXd A(n, cols);
  Eigen::VectorXd u(n), w = Eigen::VectorXd::Constant(n, 1.0 / double(n));
  for (std::size_t i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = xs[i][0];
    if (dim == 2) A(i, 2) = xs[i][1];
    u(i) = us[i];
  }

  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(us[i]));

  AffineFit best;
  best.error = std::numeric_limits<double>::infinity();
  Eigen::VectorXd r(n);
  auto store = [&](const Eigen::VectorXd& c, int it) {
    AffineFit f;
    f.a = c(0);
    f.b[0] = c(1);
    if (dim == 2) f.b[1] = c(2);
    f.error = global_error(xs, us, f);
    f.iterations = it;
    if (f.error < best.error) best = f;
    return f;
  };

  const int kIters = 240;
  for (int it = 0; it < kIters; ++it) {
    Eigen::MatrixXd Aw = w.cwiseSqrt().asDiagonal() * A;
    Eigen::VectorXd uw = w.cwiseSqrt().asDiagonal() * u;
    Eigen::VectorXd c = (Aw.transpose() * Aw).ldlt().solve(Aw.transpose() * uw);
    if (!c.allFinite()) break;
    r = u - A * c;
    store(c, it + 1);
    // Lawson weight update; renormalization keeps the iteration stable.
    double tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w(i) *= std::abs(r(i)) + 1e-14 * scale;
      tot += w(i);
    }
    if (!(tot > 0.0)) break;
    w /= tot;
  }
  if (!std::isfinite(best.error)) throw std::runtime_error("lawson_fit: failed");
  if (best.error < 1e-13 * scale) return best;

  // Exchange polish: resolve the equioscillation system on the current
  // worst points, keep the result only when it lowers the global error.
  for (int round = 0; round < 4; ++round) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<double> res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = us[i] - best.eval(xs[i]);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(res[a]) > std::abs(res[b]);
    });
    const int m = cols + 1;
    if (static_cast<int>(n) < m) break;
    Eigen::MatrixXd M(m, m);
    Eigen::VectorXd rhs(m);
    for (int k = 0; k < m; ++k) {
      const std::size_t i = idx[static_cast<std::size_t>(k)];
      M(k, 0) = 1.0;
      M(k, 1) = xs[i][0];
      if (dim == 2) M(k, 2) = xs[i][1];
      M(k, cols) = res[i] >= 0.0 ? 1.0 : -1.0;
      rhs(k) = us[i];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) break;
    Eigen::VectorXd c = lu.solve(rhs);
    AffineFit cand;
    cand.a = c(0);
    cand.b[0] = c(1);
    if (dim == 2) cand.b[1] = c(2);
    cand.error = global_error(xs, us, cand);
    cand.iterations = best.iterations;
    if (cand.error < best.error * (1.0 - 1e-12)) {
      cand.refined = true;
      best = cand;
    } else {
      break;
    }
  }
  return best;
}

AffineFit dense_fit_1d(const std::vector<Point>& xs, const std::vector<double>& us) {
  const std::size_t n = xs.size();
  if (n > 500) throw std::invalid_argument("dense minimax: too many points (1d cap 500)");
  double scale = 1.0;
  for (double v : us) scale = std::max(scale, std::abs(v));

  double best_e = -1.0;
  AffineFit best;
  for (std::size_t i = 0; i + 2 < n; ++i)
    for (std::size_t j = i + 1; j + 1 < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        double x1 = xs[i][0], x2 = xs[j][0], x3 = xs[k][0];
        double u1 = us[i], u2 = us[j], u3 = us[k];
        // Signs alternate along the x-order of the triple.
        if (x1 > x2) { std::swap(x1, x2); std::swap(u1, u2); }
        if (x2 > x3) { std::swap(x2, x3); std::swap(u2, u3); }
        if (x1 > x2) { std::swap(x1, x2); std::swap(u1, u2); }
        const double span = x3 - x1;
        if (span <= 0.0) continue;
        const double b = (u3 - u1) / span;
        const double e = (u1 - u2 - b * (x1 - x2)) / 2.0;
        if (std::abs(e) > best_e) {
          best_e = std::abs(e);
          best.a = u1 - b * x1 - e;
          best.b[0] = b;
          best.b[1] = 0.0;
        }
      }
  if (best_e < 0.0) throw std::invalid_argument("dense minimax: need 3 points");
  best.error = global_error(xs, us, best);
  if (best.error > best_e * (1.0 + 1e-8) + 1e-12 * scale)
    throw std::runtime_error("dense minimax 1d: optimality certificate failed");
  return best;
}

AffineFit dense_fit_2d(const std::vector<Point>& xs, const std::vector<double>& us) {
  const std::size_t n = xs.size();
  if (n > 80) throw std::invalid_argument("dense minimax: too many points (2d cap 80)");
  if (n < 4) throw std::invalid_argument("dense minimax: need 4 points");
  double scale = 1.0;
  for (double v : us) scale = std::max(scale, std::abs(v));

  // max over 4-point bases of the basis minimax value; the attaining
  // basis reproduces the global optimum.
  double best_e = -1.0;
  AffineFit best;
  Eigen::Matrix4d M;
  Eigen::Vector4d rhs, c;
  std::size_t sub[4];
  for (sub[0] = 0; sub[0] < n; ++sub[0])
    for (sub[1] = sub[0] + 1; sub[1] < n; ++sub[1])
      for (sub[2] = sub[1] + 1; sub[2] < n; ++sub[2])
        for (sub[3] = sub[2] + 1; sub[3] < n; ++sub[3]) {
          double sub_min = std::numeric_limits<double>::infinity();
          AffineFit sub_fit;
          for (int pat = 0; pat < 8; ++pat) {
            for (int k = 0; k < 4; ++k) {
              const Point& x = xs[sub[k]];
              M(k, 0) = 1.0;
              M(k, 1) = x[0];
              M(k, 2) = x[1];
              double s = (k == 0) ? 1.0 : ((pat >> (k - 1)) & 1 ? 1.0 : -1.0);
              M(k, 3) = s;
              rhs(k) = us[sub[k]];
            }
            Eigen::FullPivLU<Eigen::Matrix4d> lu(M);
            if (!lu.isInvertible()) continue;
            c = lu.solve(rhs);
            const double e = std::abs(c(3));
            if (e < sub_min) {
              sub_min = e;
              sub_fit.a = c(0);
              sub_fit.b[0] = c(1);
              sub_fit.b[1] = c(2);
            }
          }
          if (std::isfinite(sub_min) && sub_min > best_e) {
            best_e = sub_min;
            best = sub_fit;
          }
        }
  if (best_e < 0.0) throw std::runtime_error("dense minimax 2d: degenerate geometry");
  best.error = global_error(xs, us, best);
  if (best.error > best_e * (1.0 + 1e-8) + 1e-11 * scale)
    throw std::runtime_error("dense minimax 2d: optimality certificate failed");
  return best;
}

}  // namespace

AffineFit minimax_affine_fit(const std::vector<Point>& xs,
                             const std::vector<double>& us, int dim,
                             MinimaxMethod method) {
  if (xs.size() != us.size()) throw std::invalid_argument("minimax: size mismatch");
  if (dim != 1 && dim != 2) throw std::invalid_argument("minimax: dim must be 1 or 2");
  if (xs.size() < static_cast<std::size_t>(dim) + 2) {
    // Interpolation regime: least squares is exact.
    return lawson_fit(xs, us, dim);
  }
  switch (method) {
    case MinimaxMethod::Dense:
      return dim == 1 ? dense_fit_1d(xs, us) : dense_fit_2d(xs, us);
    case MinimaxMethod::Lawson:
    case MinimaxMethod::Auto:
    default:
      return lawson_fit(xs, us, dim);
  }
}

}  // namespace viscolab
