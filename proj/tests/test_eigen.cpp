#include "viscolab/eigen_solve.hpp"

#include <cmath>
#include <memory>

#include "doctest.h"
#include "oracles.hpp"
#include "viscolab/certificate.hpp"
#include "viscolab/smp_hopf.hpp"

using namespace viscolab;

namespace {

OperatorSpec plus_op(double lambda, double Lambda) {
  return OperatorSpec::pucci_pure(ExtremalSign::Plus, lambda, Lambda);
}

const CoefficientField kOne = CoefficientField::constant(1.0);

}  // namespace

TEST_CASE("power step normalizes and degenerates cleanly") {
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 32);
  OperatorSpec op = plus_op(1.0, 1.0);
  DirichletSolver solver(op, g, {});

  GridFunction u = GridFunction::sample(
      g, [](Point x) { return std::sin(M_PI * x[0]); });
  for (int i = g->n_interior(); i < g->n_nodes(); ++i) u[i] = 0.0;

  SUBCASE("a vanishing weight stalls the iteration") {
    std::vector<double> w(g->n_interior(), 0.0);
    PowerStep st = power_step(solver, w, u);
    CHECK_FALSE(st.positive);
    CHECK(std::isinf(st.alpha_est));
    for (int i = 0; i < g->n_nodes(); ++i) CHECK(st.next[i] == u[i]);
  }

  SUBCASE("the step is invariant under input scaling") {
    std::vector<double> w(g->n_interior(), 1.0);
    GridFunction u2 = u;
    for (int i = 0; i < g->n_nodes(); ++i) u2[i] *= 2.0;
    PowerStep a = power_step(solver, w, u);
    PowerStep b = power_step(solver, w, u2);
    CHECK(b.alpha_est == doctest::Approx(0.5 * a.alpha_est).epsilon(1e-6));
    for (int i = 0; i < g->n_interior(); ++i)
      CHECK(b.next[i] == doctest::Approx(a.next[i]).epsilon(1e-6));
  }

  SUBCASE("a short weight vector is rejected") {
    std::vector<double> w(g->n_interior() - 1, 1.0);
    CHECK_THROWS_AS(power_step(solver, w, u), std::invalid_argument);
  }
}

TEST_CASE("interval half-eigenvalues match the tridiagonal oracle") {
  const double h = 1.0 / 64;
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0), h);
  OperatorSpec op = plus_op(1.0, 2.0);
  const double mu1 = oracle::tridiag_smallest_eigenvalue(63);

  EigenPair up = eigen_solve(op, kOne, g, ExtremalSign::Plus);
  REQUIRE(up.converged);
  // Concave positive profile: the plus branch activates the lambda ray.
  CHECK(up.alpha == doctest::Approx(mu1).epsilon(1e-4));
  CHECK(up.alpha == doctest::Approx(M_PI * M_PI).epsilon(1e-2));
  CHECK(up.residual <= 1e-3 * std::max(1.0, up.alpha));

  EigenPair dn = eigen_solve(op, kOne, g, ExtremalSign::Minus);
  REQUIRE(dn.converged);
  CHECK(dn.alpha == doctest::Approx(2.0 * mu1).epsilon(1e-4));
  CHECK(dn.residual <= 1e-3 * std::max(1.0, dn.alpha));

  // Minus-branch profiles are nonpositive with max(-phi) = 1.
  double mmax = 0.0;
  for (int i = 0; i < g->n_nodes(); ++i) {
    CHECK(dn.phi[i] <= 1e-12);
    mmax = std::max(mmax, -dn.phi[i]);
  }
  CHECK(mmax == doctest::Approx(1.0).epsilon(1e-12));

  // Trichotomy and boundary quotient hold for both converged profiles.
  GridFunction mirrored(g);
  for (int i = 0; i < g->n_nodes(); ++i) mirrored[i] = -dn.phi[i];
  SmpHopfReport plus_smp = smp_hopf_check(up.phi);
  SmpHopfReport minus_smp = smp_hopf_check(mirrored);
  CHECK(plus_smp.smp_pass);
  CHECK(plus_smp.hopf_pass);
  CHECK(minus_smp.smp_pass);
  CHECK(minus_smp.hopf_pass);
}

TEST_CASE("the disc ground state lands on the Bessel root") {
  GridPtr g = Grid::build(Domain::disc(pt(0.0, 0.0), 1.0), 1.0 / 32);
  OperatorSpec op = plus_op(1.0, 1.0);
  EigenPair pair = eigen_solve(op, kOne, g, ExtremalSign::Plus);
  REQUIRE(pair.converged);
  CHECK(pair.alpha == doctest::Approx(oracle::bessel_j0_squared()).epsilon(0.01));
  CHECK(pair.residual <= 1e-3 * std::max(1.0, pair.alpha));

  SmpHopfReport smp = smp_hopf_check(pair.phi);
  CHECK(smp.smp_pass);
  CHECK(smp.hopf_pass);
}

TEST_CASE("branch duality maps the minus branch to the companion") {
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 64);
  OperatorSpec op = plus_op(1.0, 2.0);
  EigenPair minus = eigen_solve(op, kOne, g, ExtremalSign::Minus);
  EigenPair dual_plus = eigen_solve(op.dual(), kOne, g, ExtremalSign::Plus);
  REQUIRE(minus.converged);
  REQUIRE(dual_plus.converged);
  CHECK(minus.alpha == doctest::Approx(dual_plus.alpha).epsilon(1e-12));
  for (int i = 0; i < g->n_nodes(); ++i)
    CHECK(minus.phi[i] == doctest::Approx(-dual_plus.phi[i]).epsilon(1e-12));
}

TEST_CASE("the eigenvalue is monotone in the weight and the domain") {
  OperatorSpec op = plus_op(1.0, 1.0);

  SUBCASE("weight") {
    GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 64);
    CoefficientField c2 = CoefficientField::smooth(
        [](Point x) { return 1.0 + x[0] * x[0]; }, "c~bigger");
    EigenPair a = eigen_solve(op, kOne, g, ExtremalSign::Plus);
    EigenPair b = eigen_solve(op, c2, g, ExtremalSign::Plus);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(b.alpha <= a.alpha + 1e-8);
  }

  SUBCASE("domain") {
    GridPtr small = Grid::build(Domain::rectangle(0.0, 1.0, 0.0, 1.0), 1.0 / 16);
    GridPtr big =
        Grid::build(Domain::rectangle(0.0, 1.25, 0.0, 1.25), 1.0 / 16);
    EigenPair a = eigen_solve(op, kOne, small, ExtremalSign::Plus);
    EigenPair b = eigen_solve(op, kOne, big, ExtremalSign::Plus);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(b.alpha < a.alpha);
  }
}

TEST_CASE("the regularization ladder is monotone and ends at zero") {
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 64);
  OperatorSpec op = plus_op(1.0, 2.0);
  EigenPair pair = eigen_solve(op, kOne, g, ExtremalSign::Plus);
  REQUIRE(pair.converged);
  REQUIRE(pair.schedule.size() >= 2);

  // Strictly positive weight: the schedule is extended by an exact stage.
  CHECK(pair.schedule.back().first == 0.0);
  for (std::size_t k = 0; k + 1 < pair.schedule.size(); ++k) {
    CHECK(pair.schedule[k + 1].first < pair.schedule[k].first);
    CHECK(pair.schedule[k + 1].second >=
          pair.schedule[k].second - 1e-6 * std::max(1.0, pair.alpha));
  }
}

TEST_CASE("an interior weight zero keeps the regularized tail") {
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 64);
  OperatorSpec op = plus_op(1.0, 1.0);
  CoefficientField c = CoefficientField::smooth(
      [](Point x) { return (x[0] - 0.5) * (x[0] - 0.5); }, "c~pinched");
  EigenPair pair = eigen_solve(op, c, g, ExtremalSign::Plus);
  REQUIRE(pair.converged);
  CHECK(pair.schedule.back().first == doctest::Approx(std::pow(2.0, -10)));
  CHECK(pair.residual <= 2e-3 * std::max(1.0, pair.alpha));

  SmpHopfReport smp = smp_hopf_check(pair.phi);
  CHECK(smp.smp_pass);
}

TEST_CASE("eigen_solve rejects inhomogeneous operators and signed weights") {
  GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 32);

  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  sp.mu = 0.1;
  OperatorSpec quad = OperatorSpec::extremal(ExtremalSign::Plus, sp);
  CHECK_THROWS_AS(eigen_solve(quad, kOne, g, ExtremalSign::Plus),
                  std::invalid_argument);

  CoefficientField signed_c = CoefficientField::smooth(
      [](Point x) { return x[0] - 0.5; }, "c~signed");
  CHECK_THROWS_AS(
      eigen_solve(plus_op(1.0, 1.0), signed_c, g, ExtremalSign::Plus),
      std::invalid_argument);
}

TEST_CASE("distinct starts agree on the principal pair") {
  OperatorSpec op = plus_op(1.0, 2.0);

  SUBCASE("interval") {
    GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 64);
    SimplicityReport rep =
        simplicity_check(op, kOne, g, ExtremalSign::Plus, {}, 3);
    CHECK(rep.all_converged);
    CHECK(rep.pass);
    CHECK(rep.alpha_spread <= 1e-5 * std::max(1.0, rep.alpha));
  }

  SUBCASE("disc") {
    GridPtr g = Grid::build(Domain::disc(pt(0.0, 0.0), 1.0), 1.0 / 24);
    SimplicityReport rep =
        simplicity_check(op, kOne, g, ExtremalSign::Plus, {}, 3);
    CHECK(rep.all_converged);
    CHECK(rep.pass);
  }
}

TEST_CASE("the sigma certificate reproduces the desk values") {
  SUBCASE("pure interval") {
    GridPtr g = Grid::build(Domain::interval(-1.0, 1.0), 1.0 / 32);
    StructureParams sp;
    sp.lambda = 1.0;
    sp.Lambda = 1.0;
    SigmaCertificate cert =
        eigen_upper_bound_sigma(sp, kOne, g, pt(0.0, 0.0), 1.0);
    CHECK(cert.delta == 1.0);
    CHECK(cert.mix == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(cert.C0 == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(cert.bound == doctest::Approx(6.0).epsilon(1e-12));
    // V(x) = (4 - 12 x^2) - 6 (1 - x^2)^2 = -2 - 6 x^4, maximal at 0.
    CHECK(cert.max_field == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(cert.verified);

    OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Plus, sp);
    EigenPair pair = eigen_solve(op, kOne, g, ExtremalSign::Plus);
    REQUIRE(pair.converged);
    CHECK(pair.alpha <= cert.bound);
  }

  SUBCASE("disc with the Pucci window") {
    GridPtr g = Grid::build(Domain::disc(pt(0.0, 0.0), 1.0), 1.0 / 16);
    StructureParams sp;
    sp.lambda = 1.0;
    sp.Lambda = 2.0;
    SigmaCertificate cert =
        eigen_upper_bound_sigma(sp, kOne, g, pt(0.0, 0.0), 1.0);
    CHECK(cert.mix == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(cert.C0 == doctest::Approx(48.0).epsilon(1e-12));
    CHECK(cert.bound == doctest::Approx(48.0).epsilon(1e-12));
    CHECK(cert.verified);

    OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Plus, sp);
    EigenPair pair = eigen_solve(op, kOne, g, ExtremalSign::Plus);
    REQUIRE(pair.converged);
    CHECK(pair.alpha <= cert.bound);
  }

  SUBCASE("lower-order terms enter gamma and eta") {
    GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 32);
    StructureParams sp;
    sp.lambda = 1.0;
    sp.Lambda = 2.0;
    sp.b = CoefficientField::constant(0.4);
    sp.d = CoefficientField::constant(0.3);
    sp.omega = Modulus::lipschitz(1.0);
    CoefficientField c = CoefficientField::smooth(
        [](Point x) { return 1.0 + x[0]; }, "c~tilt");
    SigmaCertificate cert =
        eigen_upper_bound_sigma(sp, c, g, pt(0.5, 0.0), 0.5);
    CHECK(cert.gamma == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(cert.eta == doctest::Approx(0.3).epsilon(1e-12));
    const double nL = 2.0 + 0.4 * 0.5;
    CHECK(cert.mix == doctest::Approx(nL / (2.0 + nL)).epsilon(1e-12));
    const double C0 = 4.0 * nL / (1.0 - nL / (2.0 + nL)) + 0.3 * 0.25;
    CHECK(cert.C0 == doctest::Approx(C0).epsilon(1e-12));
    CHECK(cert.delta == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cert.verified);
  }

  SUBCASE("degenerate weights and oversized balls are rejected") {
    GridPtr g = Grid::build(Domain::interval(-1.0, 1.0), 1.0 / 32);
    StructureParams sp;
    CoefficientField pinched = CoefficientField::smooth(
        [](Point x) { return x[0] * x[0]; }, "c~zero");
    CHECK_THROWS_AS(eigen_upper_bound_sigma(sp, pinched, g, pt(0.0, 0.0), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(eigen_upper_bound_sigma(sp, kOne, g, pt(0.0, 0.0), 2.0),
                    std::invalid_argument);
  }
}

TEST_CASE("nested weights bound the principal eigenvalue") {
  OperatorSpec op = plus_op(1.0, 1.0);
  GridPtr omega = Grid::build(Domain::disc(pt(0.0, 0.0), 1.0), 1.0 / 16);
  GridPtr ball = Grid::build(Domain::disc(pt(0.0, 0.0), 0.5), 1.0 / 16);

  CoefficientField c = CoefficientField::smooth(
      [](Point x) { return 1.0 + x[0] * x[0] + x[1] * x[1]; }, "c~radial");
  EigenPair weighted = eigen_solve(op, c, omega, ExtremalSign::Plus);
  EigenPair reference = eigen_solve(op, kOne, ball, ExtremalSign::Plus);
  REQUIRE(weighted.converged);
  REQUIRE(reference.converged);
  // delta = min c = 1 on the unit disc.
  CHECK(weighted.alpha <= reference.alpha / 1.0 + 1e-4);
}

TEST_CASE("the small-domain maximum principle applies on tiny intervals") {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  sp.b = CoefficientField::constant(0.5);
  OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Plus, sp);

  SUBCASE("tiny interval: applicable and clean") {
    GridPtr g = Grid::build(Domain::interval(0.0, 0.01), 0.01 / 16);
    MpSmallReport rep = mp_small_domain(op, kOne, g, 4.0, 1.0, 20);
    CHECK(rep.applicable);
    CHECK(rep.measure == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(rep.eps0 > rep.measure);
    CHECK(rep.trials == 20);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_excess <= 1e-6);
  }

  SUBCASE("unit interval: out of scope") {
    GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 16);
    MpSmallReport rep = mp_small_domain(op, kOne, g, 4.0, 1.0, 5);
    CHECK_FALSE(rep.applicable);
    CHECK(rep.eps0 == doctest::Approx(std::pow(0.5, 4.0 / 3.0)).epsilon(1e-9));
  }

  SUBCASE("bad exponents are rejected") {
    GridPtr g = Grid::build(Domain::interval(0.0, 1.0), 1.0 / 16);
    CHECK_THROWS_AS(mp_small_domain(op, kOne, g, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(mp_small_domain(op, kOne, g, 4.0, 0.0),
                    std::invalid_argument);
  }
}
