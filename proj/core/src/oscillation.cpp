#include "viscolab/oscillation.hpp"

#include <cmath>
#include <stdexcept>

#include "viscolab/rng.hpp"

namespace viscolab {
namespace {

double matrix_norm(const SymMatrix& X, MatrixNormKind k) {
  return k == MatrixNormKind::Spectral ? X.spectral_norm()
                                       : X.frobenius_norm();
}

}  // namespace

OscillationResult oscillation_beta(const OperatorSpec& F, int dim, Point x,
                                   Point x0, OscillationVariant variant,
                                   const OscillationConfig& cfg) {
  OscillationResult best;
  auto consider = [&](const SymMatrix& X) {
    double n = matrix_norm(X, cfg.norm);
    if (variant == OscillationVariant::Beta && n < 1e-300) return;
    double denom = variant == OscillationVariant::Beta ? n : n + 1.0;
    Point z{0, 0};
    double num = std::abs(F.eval(x, 0.0, z, X) - F.eval(x0, 0.0, z, X));
    double q = num / denom;
    if (q > best.value) {
      best.value = q;
      best.argmax = X;
    }
  };

  consider(SymMatrix::identity(dim));
  consider(-SymMatrix::identity(dim));

  if (dim == 1) {
    for (int k = cfg.ladder_lo; k <= cfg.ladder_hi; ++k) {
      double v = std::ldexp(1.0, k);
      consider(SymMatrix(v));
      consider(SymMatrix(-v));
    }
  } else {
    for (int a = 0; a < cfg.rotation_angles; ++a) {
      double theta = M_PI * a / cfg.rotation_angles;
      for (int ka = cfg.ladder_lo; ka <= cfg.ladder_hi; ++ka) {
        for (int kb = cfg.ladder_lo; kb <= cfg.ladder_hi; ++kb) {
          double da = std::ldexp(1.0, ka), db = std::ldexp(1.0, kb);
          for (int sa = -1; sa <= 1; sa += 2) {
            for (int sb = -1; sb <= 1; sb += 2) {
              consider(SymMatrix::rotated_diag(sa * da, sb * db, theta));
            }
          }
        }
      }
    }
  }

  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.random_samples; ++i) {
    if (dim == 1) {
      consider(SymMatrix(rng.normal(0, 2)));
    } else {
      consider(
          SymMatrix(rng.normal(0, 2), rng.normal(0, 2), rng.normal(0, 2)));
    }
  }
  return best;
}

HThetaReport h_theta_report(const OperatorSpec& F, const Domain& domain,
                            Point x0, double r, double p, double theta,
                            int quad_per_axis, const OscillationConfig& cfg) {
  if (!(r > 0.0)) throw std::invalid_argument("h_theta_report: r must be > 0");
  if (!(p >= 1.0)) throw std::invalid_argument("h_theta_report: p must be >= 1");
  int dim = domain.dim();
  double delta = 2.0 * r / quad_per_axis;

  HThetaReport rep;
  rep.r = r;
  rep.p = p;
  rep.theta = theta;

  double acc = 0.0;
  int jmax = dim == 2 ? quad_per_axis : 1;
  for (int i = 0; i < quad_per_axis; ++i) {
    for (int j = 0; j < jmax; ++j) {
      Point q = pt(x0[0] - r + (i + 0.5) * delta,
                   dim == 2 ? x0[1] - r + (j + 0.5) * delta : 0.0);
      if (dist(q, x0) >= r) continue;
      if (!domain.contains(q)) continue;
      double beta =
          oscillation_beta(F, dim, q, x0, OscillationVariant::Beta, cfg).value;
      acc += std::pow(beta, p) * std::pow(delta, dim);
      ++rep.quad_nodes;
    }
  }
  if (rep.quad_nodes == 0)
    throw std::invalid_argument(
        "h_theta_report: B_r(x0) does not meet the domain");

  rep.value = std::pow(acc / std::pow(r, dim), 1.0 / p);
  rep.within = rep.value <= theta;
  return rep;
}

}  // namespace viscolab
