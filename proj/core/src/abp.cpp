#include "viscolab/abp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "viscolab/norms.hpp"

namespace viscolab {

ABPReport abp_check(const GridFunction& u, const GridFunction& f, double p,
                    double mu, double gate_delta) {
  const Grid& g = u.grid();
  if (&g != &f.grid()) throw std::invalid_argument("abp_check: mismatched grids");
  if (p < 1.0) throw std::invalid_argument("abp_check: p must be >= 1");

  ABPReport rep;
  rep.p = p;
  rep.max_all = u.max_all();
  rep.min_all = u.min_all();
  rep.max_boundary = u.max_boundary();
  rep.min_boundary = u.min_boundary();
  rep.excess_max = std::max(rep.max_all - rep.max_boundary, 0.0);
  rep.excess_min = std::max(rep.min_boundary - rep.min_all, 0.0);

  GridFunction fminus = f, fplus = f;
  for (int i = 0; i < g.n_nodes(); ++i) {
    fminus[i] = neg_part(f[i]);
    fplus[i] = pos_part(f[i]);
  }
  rep.f_minus_norm = lp_norm(fminus, p);
  rep.f_plus_norm = lp_norm(fplus, p);

  const double scale = std::max({std::abs(rep.max_all), std::abs(rep.min_all), 1.0});
  const double tiny = 1e-14 * scale;
  auto ratio = [&](double excess, double norm) {
    if (norm > tiny) return excess / norm;
    return excess > tiny ? std::numeric_limits<double>::infinity() : 0.0;
  };
  rep.ratio_max = ratio(rep.excess_max, rep.f_minus_norm);
  rep.ratio_min = ratio(rep.excess_min, rep.f_plus_norm);

  // Advisory quadratic-gradient gate, branch-symmetric: the worse of the
  // two one-sided source norms drives it.
  const double n = static_cast<double>(g.dim());
  const double fnorm = std::max(rep.f_minus_norm, rep.f_plus_norm);
  rep.mu_gate_value = mu * fnorm * std::pow(g.domain().diameter(), n / p);
  rep.mu_gate_ok = rep.mu_gate_value <= gate_delta;
  return rep;
}

}  // namespace viscolab
