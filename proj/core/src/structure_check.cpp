#include "viscolab/structure_check.hpp"

#include <cmath>
#include <vector>

#include "viscolab/rng.hpp"

namespace viscolab {
namespace {

constexpr double kMarginTol = 1e-9;

struct Tuple {
  Point x{0, 0};
  double r = 0, s = 0;
  Point p{0, 0}, q{0, 0};
  SymMatrix X, Y;
};

std::vector<Tuple> canonical_probes(int dim) {
  std::vector<Tuple> probes;
  auto I = SymMatrix::identity(dim);
  auto Z = SymMatrix::zero(dim);
  auto add = [&](SymMatrix X, SymMatrix Y, Point p, Point q, double r,
                 double s) {
    Tuple t;
    t.X = X;
    t.Y = Y;
    t.p = p;
    t.q = q;
    t.r = r;
    t.s = s;
    probes.push_back(t);
  };
  Point z{0, 0}, e1 = pt(1.0, 0.0);
  add(I, Z, z, z, 0, 0);
  add(Z, I, z, z, 0, 0);
  add(-I, Z, z, z, 0, 0);
  add(I.scaled(2.0), I, z, z, 0, 0);
  add(Z, Z, e1, z, 0, 0);
  add(Z, Z, z, e1, 0, 0);
  add(Z, Z, z, z, 1, 0);
  add(Z, Z, z, z, -1, 0);
  add(Z, Z, z, z, 0, 1);
  if (dim == 2) {
    add(SymMatrix::diag(1, -1), Z, z, z, 0, 0);
    add(SymMatrix(0, 1, 0), Z, z, z, 0, 0);
    add(I, -I, pt(0, 1), z, 0.5, -0.5);
  }
  return probes;
}

}  // namespace

StructureReport check_structure_condition(const OperatorSpec& F, int dim,
                                          int samples, std::uint64_t seed) {
  const StructureParams& sp = F.params();
  sp.validate();

  StructureReport report;
  report.worst_margin = 1e300;

  Rng rng(seed);
  auto rand_sym = [&]() {
    if (dim == 1) return SymMatrix(rng.normal(0, 2));
    return SymMatrix(rng.normal(0, 2), rng.normal(0, 2), rng.normal(0, 2));
  };
  auto rand_pt = [&]() {
    return pt(rng.normal(0, 2), dim == 2 ? rng.normal(0, 2) : 0.0);
  };
  auto rand_x = [&]() {
    return pt(rng.uniform(-0.5, 0.5), dim == 2 ? rng.uniform(-0.5, 0.5) : 0.0);
  };

  auto probes = canonical_probes(dim);

  auto consider = [&](const Tuple& t) {
    ++report.samples;
    double diff = F.eval(t.x, t.r, t.p, t.X) - F.eval(t.x, t.s, t.q, t.Y);
    SymMatrix D = t.X - t.Y;
    double dpq = dist(t.p, t.q);
    double slack = sp.b(t.x) * dpq +
                   sp.mu * dpq * (norm2(t.p) + norm2(t.q)) +
                   sp.d(t.x) * sp.omega(std::abs(t.r - t.s));
    double upper = pucci(D, sp.lambda, sp.Lambda, ExtremalSign::Plus) + slack;
    double lower = pucci(D, sp.lambda, sp.Lambda, ExtremalSign::Minus) - slack;
    for (int side = 0; side < 2; ++side) {
      double margin = side == 0 ? upper - diff : diff - lower;
      if (margin < report.worst_margin) {
        report.worst_margin = margin;
        report.worst = {t.x, t.r, t.s, t.p, t.q, t.X, t.Y, margin,
                        side == 0 ? "upper" : "lower"};
      }
      if (margin < -kMarginTol) ++report.violations;
    }
  };

  for (const auto& t : probes) consider(t);
  for (int i = static_cast<int>(probes.size()); i < samples; ++i) {
    Tuple t;
    t.x = rand_x();
    t.r = rng.normal(0, 2);
    t.s = rng.normal(0, 2);
    t.p = rand_pt();
    t.q = rand_pt();
    t.X = rand_sym();
    t.Y = rand_sym();
    consider(t);
  }

  for (int i = 0; i < 16; ++i) {
    Point x = rand_x();
    if (std::abs(F.eval(x, 0.0, pt(0, 0), SymMatrix::zero(dim))) > 1e-12)
      report.normalization_ok = false;
  }

  report.pass = report.violations == 0 && report.normalization_ok;
  return report;
}

}  // namespace viscolab
