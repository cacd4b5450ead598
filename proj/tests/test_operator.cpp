#include <cmath>

#include "doctest.h"
#include "viscolab/coefficient.hpp"
#include "viscolab/operator_spec.hpp"
#include "viscolab/oscillation.hpp"
#include "viscolab/rng.hpp"
#include "viscolab/structure_check.hpp"

using namespace viscolab;

namespace {

StructureParams full_params() {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  sp.mu = 0.5;
  sp.b = CoefficientField::constant(1.5);
  sp.d = CoefficientField::constant(0.7);
  sp.omega = Modulus::lipschitz(1.0);
  return sp;
}

}  // namespace

TEST_CASE("extremal operator closed form") {
  OperatorSpec fp = OperatorSpec::extremal(ExtremalSign::Plus, full_params());
  OperatorSpec fm = OperatorSpec::extremal(ExtremalSign::Minus, full_params());
  const Point x = pt(0.3, 0.1), p = pt(1.0, -2.0);
  const SymMatrix X = SymMatrix::rotated_diag(-1.0, 2.0, 0.5);
  const double gp = norm2(p);

  // Plus branch: M+ + b|p| + mu|p|^2 + d w(r^-).
  const double r1 = -0.4;
  const double want_p = pucci(X, 1, 2, ExtremalSign::Plus) + 1.5 * gp +
                        0.5 * gp * gp + 0.7 * 1.0 * 0.4;
  CHECK(fp.eval(x, r1, p, X) == doctest::Approx(want_p));
  // Positive r contributes nothing on the plus branch.
  CHECK(fp.eval(x, 0.4, p, X) ==
        doctest::Approx(want_p - 0.7 * 0.4));

  // Minus branch: M- - b|p| - mu|p|^2 - d w(r^+).
  const double want_m = pucci(X, 1, 2, ExtremalSign::Minus) - 1.5 * gp -
                        0.5 * gp * gp - 0.7 * 0.4;
  CHECK(fm.eval(x, 0.4, p, X) == doctest::Approx(want_m));

  // Normalization at the origin of arguments.
  CHECK(fp.eval(x, 0.0, pt(0, 0), SymMatrix::zero(2)) == doctest::Approx(0.0));
  CHECK(fm.eval(x, 0.0, pt(0, 0), SymMatrix::zero(2)) == doctest::Approx(0.0));
}

TEST_CASE("properness in r") {
  OperatorSpec fp = OperatorSpec::extremal(ExtremalSign::Plus, full_params());
  const SymMatrix X = SymMatrix::diag(1.0, -1.0);
  double prev = fp.eval(pt(0, 0), -1.0, pt(1, 0), X);
  for (double r : {-0.5, 0.0, 0.5, 1.0}) {
    const double v = fp.eval(pt(0, 0), r, pt(1, 0), X);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("dual maps branches onto each other") {
  OperatorSpec fp = OperatorSpec::extremal(ExtremalSign::Plus, full_params());
  OperatorSpec fm = OperatorSpec::extremal(ExtremalSign::Minus, full_params());
  OperatorSpec g = fp.dual();
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const Point x = pt(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double r = rng.uniform(-2, 2);
    const Point p = pt(rng.uniform(-2, 2), rng.uniform(-2, 2));
    SymMatrix X(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    // G(x,r,p,X) = -F(x,-r,-p,-X) coincides with the minus branch.
    CHECK(g.eval(x, r, p, X) == doctest::Approx(-fp.eval(x, -r, -1.0 * p, -X)));
    CHECK(g.eval(x, r, p, X) == doctest::Approx(fm.eval(x, r, p, X)));
    // Involution.
    CHECK(g.dual().eval(x, r, p, X) == doctest::Approx(fp.eval(x, r, p, X)));
  }
}

TEST_CASE("scaled trace and pure second order flags") {
  StructureParams sp;
  sp.lambda = 0.5;
  sp.Lambda = 1.5;
  OperatorSpec tr = OperatorSpec::scaled_trace(
      CoefficientField::smooth([](Point q) { return 1.0 + 0.5 * q[0]; }, "a"),
      sp);
  const SymMatrix X = SymMatrix::diag(2.0, 1.0);
  CHECK(tr.eval(pt(0.4, 0.0), 0.3, pt(1, 1), X) == doctest::Approx(1.2 * 3.0));
  CHECK_FALSE(tr.is_pure_second_order());

  OperatorSpec pp = OperatorSpec::pucci_pure(ExtremalSign::Plus, 1.0, 2.0);
  CHECK(pp.is_pure_second_order());
  CHECK(pp.eval(pt(0, 0), 1.0, pt(1, 0), X) ==
        doctest::Approx(pucci(X, 1, 2, ExtremalSign::Plus)));

  OperatorSpec fz = OperatorSpec::extremal(ExtremalSign::Plus, full_params());
  CHECK_FALSE(fz.is_pure_second_order());
}

TEST_CASE("one homogeneity detection") {
  StructureParams lin;
  lin.lambda = 1.0;
  lin.Lambda = 2.0;
  lin.b = CoefficientField::constant(0.5);
  CHECK(OperatorSpec::extremal(ExtremalSign::Plus, lin)
            .is_one_homogeneous(2));

  StructureParams quad = lin;
  quad.mu = 0.3;  // quadratic gradient term breaks 1-homogeneity
  CHECK_FALSE(OperatorSpec::extremal(ExtremalSign::Plus, quad)
                  .is_one_homogeneous(2));

  StructureParams pw = lin;
  pw.d = CoefficientField::constant(0.5);
  pw.omega = Modulus::power(1.0, 0.5);  // sublinear modulus breaks it too
  CHECK_FALSE(OperatorSpec::extremal(ExtremalSign::Plus, pw)
                  .is_one_homogeneous(2));
}

TEST_CASE("structure condition sampling") {
  OperatorSpec fp = OperatorSpec::extremal(ExtremalSign::Plus, full_params());
  StructureReport rep = check_structure_condition(fp, 2, 2000);
  CHECK(rep.pass);
  CHECK(rep.normalization_ok);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_margin >= -1e-9);

  // An operator violating its declared window is caught.
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 1.0;  // declared window too narrow for the true spread below
  OperatorSpec bad = OperatorSpec::custom(
      [](Point, double, Point, const SymMatrix& X) {
        return pucci(X, 0.5, 3.0, ExtremalSign::Plus);
      },
      sp, "wide-pucci");
  StructureReport brep = check_structure_condition(bad, 2, 2000);
  CHECK_FALSE(brep.pass);
  CHECK(brep.violations > 0);
}

TEST_CASE("oscillation beta vanishes for x-independent operators") {
  OperatorSpec pp = OperatorSpec::pucci_pure(ExtremalSign::Plus, 1.0, 2.0);
  const auto r = oscillation_beta(pp, 2, pt(0.4, 0.2), pt(0, 0),
                                  OscillationVariant::Beta);
  CHECK(r.value == 0.0);
  const auto rb = oscillation_beta(pp, 2, pt(0.4, 0.2), pt(0, 0),
                                   OscillationVariant::BetaBar);
  CHECK(rb.value == 0.0);
}

TEST_CASE("oscillation beta closed form for scaled trace") {
  // F(x,X) = a(x) tr X with spectral norm: beta(x,x0) = n |a(x) - a(x0)|.
  StructureParams sp;
  sp.lambda = 0.5;
  sp.Lambda = 2.0;
  CoefficientField a = CoefficientField::smooth(
      [](Point q) { return 1.0 + 0.5 * q[0] + 0.25 * q[1]; }, "affine-a");
  OperatorSpec tr = OperatorSpec::scaled_trace(a, sp);
  const Point x = pt(0.6, -0.2), x0 = pt(0.1, 0.3);
  const double want = 2.0 * std::abs(a(x) - a(x0));
  const auto r =
      oscillation_beta(tr, 2, x, x0, OscillationVariant::Beta);
  CHECK(r.value == doctest::Approx(want).epsilon(1e-3));
  CHECK(r.value <= want + 1e-9);

  const auto rb = oscillation_beta(tr, 2, x, x0, OscillationVariant::BetaBar);
  CHECK(rb.value <= r.value + 1e-12);

  // 1D: beta = |a(x) - a(x0)|.
  const auto r1 = oscillation_beta(tr, 1, pt(0.6, 0.0), pt(0.1, 0.0),
                                   OscillationVariant::Beta);
  CHECK(r1.value == doctest::Approx(std::abs(a(pt(0.6, 0.0)) - a(pt(0.1, 0.0))))
                        .epsilon(1e-3));
}

TEST_CASE("h_theta report on a shrinking ball") {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 1.0;
  CoefficientField a = CoefficientField::smooth(
      [](Point q) { return 1.0 + q[0]; }, "linear-a");
  OperatorSpec tr = OperatorSpec::scaled_trace(a, sp);
  Domain dom = Domain::rectangle(-1, 1, -1, 1);

  // beta(y, 0) = 2|y_0|; its normalized L^2 average over B_r scales like r,
  // so h_theta shrinks with the ball.
  const HThetaReport big = h_theta_report(tr, dom, pt(0, 0), 0.5, 2.0, 1.0);
  const HThetaReport small =
      h_theta_report(tr, dom, pt(0, 0), 0.05, 2.0, 1.0);
  CHECK(big.quad_nodes > 0);
  CHECK(small.value < big.value);
  CHECK(small.within);
  CHECK_THROWS(h_theta_report(tr, dom, pt(5, 5), 0.1, 2.0, 1.0));
}
