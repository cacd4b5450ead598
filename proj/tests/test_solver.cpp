#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "viscolab/norms.hpp"
#include "viscolab/rng.hpp"
#include "viscolab/solver.hpp"

using namespace viscolab;

TEST_CASE("zero data gives the zero solution") {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  sp.b = CoefficientField::constant(1.0);
  sp.d = CoefficientField::constant(0.5);
  OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Plus, sp);
  GridPtr g = Grid::build(Domain::disc(pt(0, 0), 1.0), 1.0 / 10);
  Solution sol = solve_dirichlet(op, g, CoefficientField::constant(0.0),
                                 [](Point) { return 0.0; });
  REQUIRE(sol.converged);
  CHECK(sol.u.sup_norm() <= 1e-9);
}

TEST_CASE("1d quadratic benchmark is exact") {
  // u'' = -2 on (0,1), zero boundary: u = x(1-x), reproduced to 1e-10.
  OperatorSpec lap = OperatorSpec::pucci_pure(ExtremalSign::Plus, 1.0, 1.0);
  GridPtr g = Grid::build(Domain::interval(0, 1), 1.0 / 64);
  Solution sol = solve_dirichlet(lap, g, CoefficientField::constant(-2.0),
                                 [](Point) { return 0.0; });
  REQUIRE(sol.converged);
  double err = 0.0;
  for (int i = 0; i < g->n_nodes(); ++i) {
    const double x = g->pos(i)[0];
    err = std::max(err, std::abs(sol.u[i] - x * (1.0 - x)));
  }
  CHECK(err <= 1e-10);
}

TEST_CASE("pinned boundary values") {
  OperatorSpec lap = OperatorSpec::pucci_pure(ExtremalSign::Plus, 1.0, 2.0);
  GridPtr g = Grid::build(Domain::disc(pt(0, 0), 1.0), 1.0 / 12);
  const auto psi = [](Point p) { return 0.5 * p[0] - p[1] + 0.3; };
  Solution sol = solve_pure(lap, g, psi);
  REQUIRE(sol.converged);
  for (int i = g->n_interior(); i < g->n_nodes(); ++i)
    CHECK(sol.u[i] == psi(g->pos(i)));
  // Linear boundary data: the linear function itself solves F(D^2 u) = 0.
  for (int i = 0; i < g->n_nodes(); ++i)
    CHECK(sol.u[i] == doctest::Approx(psi(g->pos(i))).epsilon(1e-7));
}

TEST_CASE("comparison principle for ordered right-hand sides") {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  sp.b = CoefficientField::constant(0.5);
  OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Plus, sp);
  GridPtr g = Grid::build(Domain::rectangle(0, 1, 0, 1), 1.0 / 16);
  const auto psi = [](Point p) { return 0.2 * p[0]; };
  CoefficientField f1 = CoefficientField::smooth(
      [](Point p) { return std::sin(4.0 * p[0]) - 0.5; }, "f1");
  CoefficientField f2 = CoefficientField::smooth(
      [](Point p) { return std::sin(4.0 * p[0]) + 0.5; }, "f2");
  Solution u1 = solve_dirichlet(op, g, f1, psi);
  Solution u2 = solve_dirichlet(op, g, f2, psi);
  REQUIRE(u1.converged);
  REQUIRE(u2.converged);
  // f1 <= f2 pointwise forces u1 >= u2 for a proper monotone scheme.
  for (int i = 0; i < g->n_nodes(); ++i) CHECK(u1.u[i] >= u2.u[i] - 1e-7);
}

TEST_CASE("homogeneity of degree one") {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  sp.b = CoefficientField::constant(0.7);
  OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Minus, sp);
  GridPtr g = Grid::build(Domain::disc(pt(0, 0), 1.0), 1.0 / 10);
  const auto psi = [](Point p) { return std::cos(2.0 * p[0]) * p[1]; };
  const double t = 3.5;
  Solution a = solve_dirichlet(op, g, CoefficientField::constant(0.0), psi);
  Solution b = solve_dirichlet(op, g, CoefficientField::constant(0.0),
                               [&](Point p) { return t * psi(p); });
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  for (int i = 0; i < g->n_nodes(); ++i)
    CHECK(b.u[i] == doctest::Approx(t * a.u[i]).epsilon(5e-6));
}

TEST_CASE("policy iteration agrees with pseudo transient") {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Plus, sp);
  GridPtr g = Grid::build(Domain::interval(0, 1), 1.0 / 32);
  CoefficientField f = CoefficientField::smooth(
      [](Point p) { return 4.0 * std::sin(6.0 * p[0]); }, "wavy");
  const auto psi = [](Point) { return 0.0; };

  SolveConfig cp;
  cp.policy_iteration = true;
  Solution up = solve_dirichlet(op, g, f, psi, cp);
  SolveConfig ct;
  ct.policy_iteration = false;
  Solution ut = solve_dirichlet(op, g, f, psi, ct);
  REQUIRE(up.converged);
  REQUIRE(up.used_policy);
  REQUIRE(ut.converged);
  CHECK_FALSE(ut.used_policy);
  for (int i = 0; i < g->n_nodes(); ++i)
    CHECK(up.u[i] == doctest::Approx(ut.u[i]).epsilon(1e-5));
  CHECK(up.iterations < ut.iterations);
}

TEST_CASE("radial pucci solve matches the shooting oracle") {
  // Downscaled variant of the disc benchmark (h = 1/32 keeps it fast).
  OperatorSpec op = OperatorSpec::pucci_pure(ExtremalSign::Plus, 1.0, 2.0);
  GridPtr g = Grid::build(Domain::disc(pt(0, 0), 1.0), 1.0 / 32);
  Solution sol = solve_dirichlet(op, g, CoefficientField::constant(-1.0),
                                 [](Point) { return 0.0; });
  REQUIRE(sol.converged);

  const auto prof = oracle::pucci_radial_profile(
      1.0, 2.0, [](double) { return -1.0; }, 1.0);
  double err = 0.0;
  for (int i = 0; i < g->n_nodes(); ++i)
    err = std::max(err, std::abs(sol.u[i] - prof(norm2(g->pos(i)))));
  CHECK(err <= 2e-3);
  // Closed form for this f: u = (1 - r^2)/4 (both curvatures negative).
  for (int i = 0; i < g->n_interior(); ++i) {
    const double r2 = dot(g->pos(i), g->pos(i));
    CHECK(sol.u[i] == doctest::Approx((1.0 - r2) / 4.0).epsilon(1e-7));
  }
}

TEST_CASE("residual field flags perturbations") {
  OperatorSpec lap = OperatorSpec::pucci_pure(ExtremalSign::Plus, 1.0, 1.0);
  GridPtr g = Grid::build(Domain::interval(0, 1), 1.0 / 32);
  SolveConfig cfg;
  DirichletSolver solver(lap, g, cfg);
  GridFunction f(g), psi(g);
  for (int i = 0; i < g->n_interior(); ++i) f[i] = -2.0;
  Solution sol = solver.solve(f, psi);
  REQUIRE(sol.converged);
  CHECK(residual_norm_inf(solver.scheme(), sol.u, f) <= cfg.tol * 1.01);

  GridFunction bad = sol.u;
  bad[g->n_interior() / 2] += 0.1;
  CHECK(residual_norm_inf(solver.scheme(), bad, f) > 1.0);
}

TEST_CASE("harmonic extension obeys the discrete maximum principle") {
  GridPtr g = Grid::build(Domain::disc(pt(0, 0), 1.0), 1.0 / 16);
  GridFunction psi(g);
  Rng rng(2);
  for (int i = g->n_interior(); i < g->n_nodes(); ++i)
    psi[i] = rng.uniform(-1.0, 1.0);
  GridFunction ext = harmonic_extension(g, psi);
  CHECK(ext.max_interior() <= psi.max_boundary() + 1e-9);
  CHECK(ext.min_interior() >= psi.min_boundary() - 1e-9);
  for (int i = g->n_interior(); i < g->n_nodes(); ++i)
    CHECK(ext[i] == psi[i]);
}

TEST_CASE("refinement is Cauchy on a smooth problem") {
  StructureParams sp;
  sp.lambda = 1.0;
  sp.Lambda = 2.0;
  sp.b = CoefficientField::constant(0.5);
  OperatorSpec op = OperatorSpec::extremal(ExtremalSign::Plus, sp);
  CoefficientField f = CoefficientField::smooth(
      [](Point p) { return std::cos(3.0 * p[0]) - 1.0; }, "smooth-f");
  const auto psi = [](Point) { return 0.0; };

  double prev_change = -1.0;
  GridFunction* coarse = nullptr;
  GridFunction store[3] = {
      GridFunction(Grid::build(Domain::interval(0, 1), 1.0 / 16)),
      GridFunction(Grid::build(Domain::interval(0, 1), 1.0 / 32)),
      GridFunction(Grid::build(Domain::interval(0, 1), 1.0 / 64))};
  int idx = 0;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    GridPtr g = Grid::build(Domain::interval(0, 1), h);
    Solution sol = solve_dirichlet(op, g, f, psi);
    REQUIRE(sol.converged);
    store[idx] = sol.u;
    if (coarse != nullptr) {
      double change = 0.0;
      const Grid& cg = coarse->grid();
      for (int i = 0; i < cg.n_nodes(); ++i)
        change = std::max(change,
                          std::abs((*coarse)[i] - sol.u.interpolate(cg.pos(i))));
      if (prev_change >= 0.0) CHECK(change < prev_change);
      prev_change = change;
    }
    coarse = &store[idx];
    ++idx;
  }
  // First-order upwind term dominates: changes shrink roughly like h.
  CHECK(prev_change < 5e-3);
}
