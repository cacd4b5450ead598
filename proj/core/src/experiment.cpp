#include "viscolab/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "viscolab/abp.hpp"
#include "viscolab/approximation.hpp"
#include "viscolab/caffarelli.hpp"
#include "viscolab/certificate.hpp"
#include "viscolab/eigen_solve.hpp"
#include "viscolab/io.hpp"
#include "viscolab/nagumo.hpp"
#include "viscolab/norms.hpp"
#include "viscolab/oscillation.hpp"
#include "viscolab/report.hpp"
#include "viscolab/rng.hpp"
#include "viscolab/smp_hopf.hpp"

namespace viscolab {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

void check_consumed(const Config& cfg) {
  const auto unused = cfg.unused_keys();
  if (unused.empty()) return;
  std::string msg = "unknown config key(s):";
  for (const auto& k : unused) msg += " '" + k + "'";
  bad(msg);
}

/// Collects emitted artifacts with their content hashes.
struct Emitter {
  std::string dir;
  std::vector<std::pair<std::string, std::string>> files;

  std::string path(const std::string& name) const { return dir + "/" + name; }
  void note(const std::string& name) {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files.emplace_back(name, fnv1a64_hex(ss.str()));
  }
};

struct Expect {
  std::vector<std::string> failures;
  void that(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

}  // namespace

Domain parse_domain(const Config& cfg) {
  const std::string shape = cfg.get_string("domain.shape");
  if (shape == "interval")
    return Domain::interval(cfg.get_double("domain.a"),
                            cfg.get_double("domain.b"));
  if (shape == "rectangle")
    return Domain::rectangle(cfg.get_double("domain.ax"),
                             cfg.get_double("domain.bx"),
                             cfg.get_double("domain.ay"),
                             cfg.get_double("domain.by"));
  if (shape == "disc")
    return Domain::disc(pt(cfg.get_double("domain.cx", 0.0),
                           cfg.get_double("domain.cy", 0.0)),
                        cfg.get_double("domain.radius"));
  if (shape == "half_disc")
    return Domain::half_disc(cfg.get_double("domain.radius"),
                             cfg.get_double("domain.nu"));
  bad("domain.shape must be interval | rectangle | disc | half_disc");
}

GridPtr parse_grid(const Config& cfg, const Domain& domain) {
  return Grid::build(domain, cfg.get_double("grid.h"));
}

CoefficientField parse_coefficient(const Config& cfg, const std::string& prefix,
                                   const CoefficientField& fallback) {
  if (!cfg.has(prefix + ".kind")) {
    if (!cfg.keys_under(prefix).empty())
      bad("coefficient block '" + prefix + "' is missing " + prefix + ".kind");
    return fallback;
  }
  const std::string kind = cfg.get_string(prefix + ".kind");
  if (kind == "constant")
    return CoefficientField::constant(cfg.get_double(prefix + ".value"));
  if (kind == "affine") {
    const double a0 = cfg.get_double(prefix + ".a0", 0.0);
    const double gx = cfg.get_double(prefix + ".gx", 0.0);
    const double gy = cfg.get_double(prefix + ".gy", 0.0);
    return CoefficientField::smooth(
        [a0, gx, gy](Point p) { return a0 + gx * p[0] + gy * p[1]; },
        prefix + ":affine");
  }
  if (kind == "oscillatory") {
    const double amp = cfg.get_double(prefix + ".amp");
    const double kx = cfg.get_double(prefix + ".kx", 1.0);
    const double ky = cfg.get_double(prefix + ".ky", 0.0);
    const double phase = cfg.get_double(prefix + ".phase", 0.0);
    const double offset = cfg.get_double(prefix + ".offset", 0.0);
    return CoefficientField::smooth(
        [amp, kx, ky, phase, offset](Point p) {
          return offset + amp * std::sin(kx * p[0] + phase) * std::cos(ky * p[1]);
        },
        prefix + ":oscillatory");
  }
  if (kind == "singular")
    return CoefficientField::singular(cfg.get_double(prefix + ".kappa"),
                                      pt(cfg.get_double(prefix + ".cx", 0.0),
                                         cfg.get_double(prefix + ".cy", 0.0)),
                                      cfg.get_double(prefix + ".s"));
  if (kind == "radial") {
    const Point c = pt(cfg.get_double(prefix + ".cx", 0.0),
                       cfg.get_double(prefix + ".cy", 0.0));
    const double c0 = cfg.get_double(prefix + ".c0", 0.0);
    const double c2 = cfg.get_double(prefix + ".c2", 0.0);
    const double c4 = cfg.get_double(prefix + ".c4", 0.0);
    return CoefficientField::smooth(
        [c, c0, c2, c4](Point p) {
          const double r2 = dot(p - c, p - c);
          return c0 + c2 * r2 + c4 * r2 * r2;
        },
        prefix + ":radial");
  }
  if (kind == "abs_power") {
    const Point c = pt(cfg.get_double(prefix + ".cx", 0.0),
                       cfg.get_double(prefix + ".cy", 0.0));
    const double amp = cfg.get_double(prefix + ".amp", 1.0);
    const double e = cfg.get_double(prefix + ".exponent");
    return CoefficientField::smooth(
        [c, amp, e](Point p) { return amp * std::pow(dist(p, c), e); },
        prefix + ":abs_power");
  }
  bad("coefficient '" + prefix +
      "': kind must be constant | affine | oscillatory | singular | radial | "
      "abs_power");
}

namespace {

Modulus parse_omega(const Config& cfg) {
  const std::string kind = cfg.get_string("operator.omega.kind", "lipschitz");
  if (kind == "lipschitz")
    return Modulus::lipschitz(cfg.get_double("operator.omega.L", 1.0));
  if (kind == "power")
    return Modulus::power(cfg.get_double("operator.omega.c"),
                          cfg.get_double("operator.omega.gamma"));
  bad("operator.omega.kind must be lipschitz | power");
}

StructureParams parse_params(const Config& cfg) {
  StructureParams sp;
  sp.lambda = cfg.get_double("operator.lambda", 1.0);
  sp.Lambda = cfg.get_double("operator.Lambda", 1.0);
  sp.mu = cfg.get_double("operator.mu", 0.0);
  sp.b = parse_coefficient(cfg, "operator.b", CoefficientField::constant(0.0));
  sp.d = parse_coefficient(cfg, "operator.d", CoefficientField::constant(0.0));
  sp.omega = parse_omega(cfg);
  try {
    sp.validate();
  } catch (const std::exception& e) {
    bad(std::string("operator: ") + e.what());
  }
  return sp;
}

}  // namespace

OperatorSpec parse_operator(const Config& cfg) {
  const std::string kind = cfg.get_string("operator.kind", "extremal");
  StructureParams sp = parse_params(cfg);
  if (kind == "extremal") {
    const std::string sign = cfg.get_string("operator.sign", "plus");
    if (sign != "plus" && sign != "minus")
      bad("operator.sign must be plus | minus");
    return OperatorSpec::extremal(
        sign == "plus" ? ExtremalSign::Plus : ExtremalSign::Minus, sp);
  }
  if (kind == "trace")
    return OperatorSpec::scaled_trace(
        parse_coefficient(cfg, "operator.a", CoefficientField::constant(1.0)),
        sp);
  bad("operator.kind must be extremal | trace");
}

SolveConfig parse_solve(const Config& cfg, int dim) {
  SolveConfig sc;
  sc.tol = cfg.get_double("solve.tol", sc.tol);
  sc.max_sweeps = static_cast<int>(cfg.get_int("solve.max_sweeps", sc.max_sweeps));
  sc.stencil.m = static_cast<int>(cfg.get_int("solve.stencil", sc.stencil.m));
  try {
    sc.stencil.validate(dim);
  } catch (const std::exception& e) {
    bad(std::string("solve.stencil: ") + e.what());
  }
  sc.rho_safety = cfg.get_double("solve.rho_safety", sc.rho_safety);
  sc.policy_iteration = cfg.get_bool("solve.policy", sc.policy_iteration);
  sc.max_policy_iterations = static_cast<int>(
      cfg.get_int("solve.max_policy_iterations", sc.max_policy_iterations));
  const std::string grad = cfg.get_string("solve.gradient", "upwind");
  if (grad == "upwind")
    sc.gradient = GradientDiscretization::Upwind;
  else if (grad == "centered")
    sc.gradient = GradientDiscretization::Centered;
  else
    bad("solve.gradient must be upwind | centered");
  sc.force_non_monotone =
      cfg.get_bool("solve.force_non_monotone", sc.force_non_monotone);
  sc.mu_gate_delta = cfg.get_double("solve.mu_gate_delta", sc.mu_gate_delta);
  sc.mu_gate_p = cfg.get_double("solve.mu_gate_p", sc.mu_gate_p);
  return sc;
}

namespace {

EigenConfig parse_eigen(const Config& cfg, int dim) {
  EigenConfig ec;
  ec.solver = parse_solve(cfg, dim);
  ec.tol_alpha = cfg.get_double("eigen.tol_alpha", ec.tol_alpha);
  ec.tol_field = cfg.get_double("eigen.tol_field", ec.tol_field);
  ec.max_power_steps = static_cast<int>(
      cfg.get_int("eigen.max_power_steps", ec.max_power_steps));
  const long levels = cfg.get_int("eigen.eps_levels", 11);
  if (levels < 1 || levels > 40) bad("eigen.eps_levels must be in [1, 40]");
  for (long k = 0; k < levels; ++k)
    ec.eps_schedule.push_back(std::pow(2.0, -static_cast<double>(k)));
  return ec;
}

ExtremalSign parse_branch(const Config& cfg) {
  const std::string b = cfg.get_string("eigen.branch", "plus");
  if (b == "plus") return ExtremalSign::Plus;
  if (b == "minus") return ExtremalSign::Minus;
  bad("eigen.branch must be plus | minus");
}

std::function<double(Point)> as_fn(const CoefficientField& f) {
  return [f](Point p) { return f(p); };
}

// ---------------------------------------------------------------- solve ----

void run_solve(const Config& cfg, std::uint64_t seed, Report& rep, Emitter& em,
               Expect& ex) {
  Domain dom = parse_domain(cfg);
  GridPtr grid = parse_grid(cfg, dom);
  OperatorSpec op = parse_operator(cfg);
  SolveConfig sc = parse_solve(cfg, grid->dim());
  CoefficientField f =
      parse_coefficient(cfg, "rhs", CoefficientField::constant(0.0));
  CoefficientField psi =
      parse_coefficient(cfg, "boundary", CoefficientField::constant(0.0));
  const bool has_ref = cfg.has("reference.kind");
  CoefficientField ref =
      parse_coefficient(cfg, "reference", CoefficientField::constant(0.0));
  const double sup_err_le = cfg.get_double("expect.sup_error_le", -1.0);
  const double resid_le = cfg.get_double("expect.residual_le", -1.0);
  const double abp_p = cfg.get_double("abp.p", grid->dim() + 1.0);
  check_consumed(cfg);
  (void)seed;

  Solution sol = solve_dirichlet(op, grid, f, as_fn(psi), sc);
  if (!sol.converged)
    throw std::runtime_error("solver did not converge: " + sol.failure);

  rep.put("problem.domain", dom.describe());
  rep.put("problem.operator", op.label());
  rep.put("problem.h", grid->h());
  rep.put("problem.nodes", grid->n_nodes());
  rep.put("solve.residual", sol.residual_norm);
  rep.put("solve.iterations", sol.iterations);
  rep.put("solve.used_policy", sol.used_policy);
  rep.put("solve.mu_gate_ok", sol.mu_gate_ok);
  rep.put("solve.mu_gate_value", sol.mu_gate_value);
  rep.put("solution.sup_norm", sol.u.sup_norm());

  const GridFunction fs = f.snapped(*grid).sample(grid);
  const ABPReport abp = abp_check(sol.u, fs, abp_p, op.params().mu);
  rep.put("abp.p", abp.p);
  rep.put("abp.ratio_max", abp.ratio_max);
  rep.put("abp.ratio_min", abp.ratio_min);
  rep.put("abp.excess_max", abp.excess_max);
  rep.put("abp.excess_min", abp.excess_min);

  if (has_ref) {
    double err = 0.0;
    for (int i = 0; i < grid->n_nodes(); ++i)
      err = std::max(err, std::abs(sol.u[i] - ref(grid->pos(i))));
    rep.put("solution.sup_error", err);
    if (sup_err_le >= 0.0)
      ex.that(err <= sup_err_le, "solution.sup_error <= expect.sup_error_le");
  } else if (sup_err_le >= 0.0) {
    bad("expect.sup_error_le needs a reference block");
  }
  if (resid_le >= 0.0)
    ex.that(sol.residual_norm <= resid_le,
            "solve.residual <= expect.residual_le");

  write_field_csv(em.path("solution.csv"), sol.u);
  em.note("solution.csv");
  {
    std::vector<std::vector<double>> rows;
    for (const auto& [it, r] : sol.trace)
      rows.push_back({static_cast<double>(it), r});
    write_csv(em.path("trace.csv"), {"iteration", "residual"}, rows);
    em.note("trace.csv");
  }
}

// ---------------------------------------------------------------- eigen ----

void run_eigen(const Config& cfg, std::uint64_t seed, Report& rep, Emitter& em,
               Expect& ex) {
  Domain dom = parse_domain(cfg);
  GridPtr grid = parse_grid(cfg, dom);
  OperatorSpec op = parse_operator(cfg);
  EigenConfig ec = parse_eigen(cfg, grid->dim());
  ExtremalSign branch = parse_branch(cfg);
  CoefficientField c =
      parse_coefficient(cfg, "weight", CoefficientField::constant(1.0));
  const double alpha_expect = cfg.get_double("expect.alpha", -1.0);
  const double alpha_rtol = cfg.get_double("expect.alpha_rtol", 0.01);
  const bool expect_hopf = cfg.get_bool("expect.hopf", true);
  check_consumed(cfg);
  (void)seed;

  EigenPair pair = eigen_solve(op, c, grid, branch, ec);
  if (!pair.converged)
    throw std::runtime_error("eigen power iteration did not converge");

  rep.put("problem.domain", dom.describe());
  rep.put("problem.operator", op.label());
  rep.put("problem.h", grid->h());
  rep.put("eigen.branch", branch == ExtremalSign::Plus ? "plus" : "minus");
  rep.put("eigen.alpha", pair.alpha);
  rep.put("eigen.residual", pair.residual);
  rep.put("eigen.power_steps", pair.steps);
  {
    std::vector<double> eps, alphas;
    for (const auto& [e, a] : pair.schedule) {
      eps.push_back(e);
      alphas.push_back(a);
    }
    rep.put_array("eigen.schedule_eps", eps);
    rep.put_array("eigen.schedule_alpha", alphas);
    // Continuation ladder: alpha must not decrease as eps shrinks.
    bool mono = true;
    for (std::size_t k = 1; k < alphas.size(); ++k)
      if (alphas[k] < alphas[k - 1] - 1e-9 * std::max(1.0, alphas[k])) mono = false;
    rep.put("eigen.schedule_monotone", mono);
    ex.that(mono, "alpha(c+eps) nondecreasing as eps decreases");
  }

  GridFunction profile = pair.phi;
  if (branch == ExtremalSign::Minus)
    for (int i = 0; i < grid->n_nodes(); ++i) profile[i] = -profile[i];
  const SmpHopfReport sh = smp_hopf_check(profile);
  rep.put("hopf.smp_pass", sh.smp_pass);
  rep.put("hopf.min_quotient", sh.min_quotient);
  rep.put("hopf.threshold", sh.threshold);
  rep.put("hopf.pass", sh.hopf_pass);
  if (expect_hopf) {
    ex.that(sh.smp_pass, "eigenfunction positive in the interior");
    ex.that(sh.hopf_pass, "boundary normal quotient >= threshold");
  }

  if (alpha_expect > 0.0)
    ex.that(std::abs(pair.alpha - alpha_expect) <= alpha_rtol * alpha_expect,
            "alpha within expect.alpha_rtol of expect.alpha");

  write_field_csv(em.path("eigenfunction.csv"), pair.phi);
  em.note("eigenfunction.csv");
}

// ------------------------------------------------------------ abp batch ----

void run_abp_batch(const Config& cfg, std::uint64_t seed, Report& rep,
                   Emitter& em, Expect& ex) {
  const long count = cfg.get_int("batch.count", 100);
  const std::string domains = cfg.get_string("batch.domains", "both");
  if (domains != "1d" && domains != "2d" && domains != "both")
    bad("batch.domains must be 1d | 2d | both");
  const double h1 = cfg.get_double("batch.h1", 1.0 / 64);
  const double h2 = cfg.get_double("batch.h2", 1.0 / 24);
  const double cap = cfg.get_double("expect.cap", -1.0);
  check_consumed(cfg);

  GridPtr g1 = Grid::build(Domain::interval(0.0, 1.0), h1);
  GridPtr g2 = Grid::build(Domain::disc(pt(0.0, 0.0), 1.0), h2);

  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  int violations = 0;
  for (long t = 0; t < count; ++t) {
    const bool two_d =
        domains == "2d" || (domains == "both" && (t % 2 == 1));
    GridPtr grid = two_d ? g2 : g1;
    const int n = grid->dim();
    const double p = n + 1.0;

    StructureParams sp;
    sp.lambda = rng.uniform(0.5, 1.5);
    sp.Lambda = sp.lambda * rng.uniform(1.0, 2.5);
    const int bkind = static_cast<int>(t % 3);
    if (bkind == 0) {
      sp.b = CoefficientField::constant(rng.uniform(0.0, 2.0));
    } else if (bkind == 1) {
      const double amp = rng.uniform(0.0, 2.0), k = rng.uniform(0.5, 3.0);
      sp.b = CoefficientField::smooth(
          [amp, k](Point x) { return amp * (1.1 + std::sin(k * x[0])); },
          "batch-b");
    } else {
      // Admissible singular gradient coefficient: s p < n.
      const double s = 0.8 * n / p;
      sp.b = CoefficientField::singular(rng.uniform(0.1, 0.5),
                                        pt(rng.uniform(0.2, 0.4), 0.0), s);
    }
    sp.d = CoefficientField::constant(rng.uniform(0.0, 1.0));
    const ExtremalSign sign =
        rng.integer(2) == 0 ? ExtremalSign::Plus : ExtremalSign::Minus;
    OperatorSpec op = OperatorSpec::extremal(sign, sp);

    const double af = rng.uniform(0.5, 4.0), kf = rng.uniform(0.5, 4.0);
    const double ph = rng.uniform(0.0, 6.28), off = rng.uniform(-1.0, 1.0);
    CoefficientField f = CoefficientField::smooth(
        [af, kf, ph, off](Point x) {
          return off + af * std::sin(kf * x[0] + ph) * std::cos(0.7 * x[1]);
        },
        "batch-f");
    const double ap = rng.uniform(0.0, 1.0), kp = rng.uniform(0.5, 3.0);
    auto psi = [ap, kp](Point x) {
      return ap * std::sin(kp * (x[0] + 0.3 * x[1]));
    };

    SolveConfig sc;
    Solution sol = solve_dirichlet(op, grid, f, psi, sc);
    if (!sol.converged)
      throw std::runtime_error("abp_batch: instance " + std::to_string(t) +
                               " failed: " + sol.failure);

    const GridFunction fs = f.snapped(*grid).sample(grid);
    const ABPReport a = abp_check(sol.u, fs, p);
    const double r = std::max(a.ratio_max, a.ratio_min);
    worst = std::max(worst, r);
    if (cap >= 0.0 && r > cap) ++violations;
    rows.push_back({static_cast<double>(t), static_cast<double>(n),
                    a.ratio_max, a.ratio_min, a.excess_max, a.excess_min,
                    a.f_minus_norm, a.f_plus_norm});
  }

  write_csv(em.path("ratios.csv"),
            {"instance", "dim", "ratio_max", "ratio_min", "excess_max",
             "excess_min", "f_minus_norm", "f_plus_norm"},
            rows);
  em.note("ratios.csv");

  rep.put("batch.count", static_cast<std::int64_t>(count));
  rep.put("batch.worst_ratio", worst);
  rep.put("batch.violations", violations);
  if (cap >= 0.0) {
    rep.put("batch.cap", cap);
    ex.that(violations == 0, "all instances within expect.cap");
  }
}

// ----------------------------------------------------------- regularity ----

void run_regularity(const Config& cfg, std::uint64_t seed, Report& rep,
                    Emitter& em, Expect& ex) {
  Domain dom = parse_domain(cfg);
  GridPtr grid = parse_grid(cfg, dom);
  const std::string source = cfg.get_string("regularity.source", "solve");

  CaffarelliConfig cc;
  cc.r0 = cfg.get_double("regularity.r0", 1.0);
  cc.gamma = cfg.get_double("regularity.gamma", 0.25);
  cc.K = static_cast<int>(cfg.get_int("regularity.K", 6));
  cc.min_nodes = static_cast<std::size_t>(cfg.get_int("regularity.min_nodes", 10));
  const std::string method = cfg.get_string("regularity.method", "auto");
  if (method == "auto") cc.method = MinimaxMethod::Auto;
  else if (method == "lawson") cc.method = MinimaxMethod::Lawson;
  else if (method == "dense") cc.method = MinimaxMethod::Dense;
  else bad("regularity.method must be auto | lawson | dense");
  const Point center = pt(cfg.get_double("regularity.cx", 0.0),
                          cfg.get_double("regularity.cy", 0.0));

  const double alpha_expect = cfg.get_double("expect.alpha", -1.0);
  const double alpha_tol = cfg.get_double("expect.alpha_tol", 0.05);
  const bool expect_zero = cfg.get_bool("expect.zero_errors", false);

  GridFunction u(grid);
  if (source == "profile") {
    CoefficientField prof =
        parse_coefficient(cfg, "profile", CoefficientField::constant(0.0));
    check_consumed(cfg);
    u = prof.sample(grid);
  } else if (source == "solve") {
    OperatorSpec op = parse_operator(cfg);
    SolveConfig sc = parse_solve(cfg, grid->dim());
    CoefficientField f =
        parse_coefficient(cfg, "rhs", CoefficientField::constant(0.0));
    CoefficientField psi =
        parse_coefficient(cfg, "boundary", CoefficientField::constant(0.0));
    check_consumed(cfg);
    Solution sol = solve_dirichlet(op, grid, f, as_fn(psi), sc);
    if (!sol.converged)
      throw std::runtime_error("regularity: solve failed: " + sol.failure);
    u = sol.u;
  } else {
    bad("regularity.source must be solve | profile");
  }
  (void)seed;

  RegularityFit fit = caffarelli_fit(u, center, cc);

  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < fit.scales.size(); ++k) {
    const ScaleFit& s = fit.scales[k];
    rows.push_back({static_cast<double>(k), s.r, s.fit.error, s.fit.a,
                    s.fit.b[0], s.fit.b[1], static_cast<double>(s.nodes)});
  }
  write_csv(em.path("ladder.csv"),
            {"k", "r_k", "E_k", "a_k", "b_k_x", "b_k_y", "nodes"}, rows);
  em.note("ladder.csv");

  rep.put("fit.alpha_raw", fit.alpha_raw);
  rep.put("fit.alpha_est", fit.alpha_est);
  rep.put("fit.C_est", fit.C_est);
  rep.put("fit.K2_est", fit.K2_est);
  rep.put("fit.degenerate", fit.degenerate);
  rep.put("fit.boundary", fit.boundary);
  rep.put_array("fit.b_increments", fit.b_increments);

  if (alpha_expect >= 0.0)
    ex.that(std::abs(fit.alpha_est - alpha_expect) <= alpha_tol + 1e-12,
            "alpha_est within expect.alpha_tol of expect.alpha");
  if (expect_zero) {
    bool all_zero = true;
    const double tol = 1e-11 * std::max(1.0, u.sup_norm());
    for (const ScaleFit& s : fit.scales)
      if (s.usable && s.fit.error > tol) all_zero = false;
    ex.that(all_zero, "all ladder errors at the noise floor");
  }
}

// ---------------------------------------------------------- oscillation ----

void run_oscillation(const Config& cfg, std::uint64_t seed, Report& rep,
                     Emitter& em, Expect& ex) {
  Domain dom = parse_domain(cfg);
  OperatorSpec op = parse_operator(cfg);
  const auto xs = cfg.get_list("oscillation.x");
  const auto x0s = cfg.get_list("oscillation.x0");
  const Point x = pt(xs[0], xs.size() > 1 ? xs[1] : 0.0);
  const Point x0 = pt(x0s[0], x0s.size() > 1 ? x0s[1] : 0.0);
  OscillationConfig oc;
  oc.seed = seed;
  const double beta_expect = cfg.get_double("expect.beta", -1.0);
  const double beta_tol = cfg.get_double("expect.beta_tol", 1e-3);
  const bool has_htheta = cfg.has("oscillation.r");
  double r = 0.0, p = 0.0, theta = 0.0;
  if (has_htheta) {
    r = cfg.get_double("oscillation.r");
    p = cfg.get_double("oscillation.p");
    theta = cfg.get_double("oscillation.theta");
  }
  const bool expect_within = cfg.get_bool("expect.within", false);
  check_consumed(cfg);
  (void)em;

  const auto beta =
      oscillation_beta(op, dom.dim(), x, x0, OscillationVariant::Beta, oc);
  const auto beta_bar =
      oscillation_beta(op, dom.dim(), x, x0, OscillationVariant::BetaBar, oc);
  rep.put("oscillation.beta", beta.value);
  rep.put("oscillation.beta_bar", beta_bar.value);
  ex.that(beta_bar.value <= beta.value + 1e-12, "beta_bar <= beta");
  if (beta_expect >= 0.0)
    ex.that(std::abs(beta.value - beta_expect) <= beta_tol,
            "beta within expect.beta_tol of expect.beta");

  if (has_htheta) {
    const HThetaReport ht = h_theta_report(op, dom, x0, r, p, theta, 33, oc);
    rep.put("h_theta.value", ht.value);
    rep.put("h_theta.theta", ht.theta);
    rep.put("h_theta.within", ht.within);
    rep.put("h_theta.quad_nodes", ht.quad_nodes);
    if (expect_within) ex.that(ht.within, "h_theta value within theta");
  }
}

// -------------------------------------------------------- approximation ----

void run_approximation(const Config& cfg, std::uint64_t seed, Report& rep,
                       Emitter& em, Expect& ex) {
  Domain dom = parse_domain(cfg);
  GridPtr grid = parse_grid(cfg, dom);
  OperatorSpec op = parse_operator(cfg);
  GapConfig gc;
  gc.solve = parse_solve(cfg, grid->dim());
  gc.p = cfg.get_double("gap.p", 2.0);
  gc.A = cfg.get_double("gap.A", 0.0);
  gc.B = pt(cfg.get_double("gap.Bx", 0.0), cfg.get_double("gap.By", 0.0));
  gc.oscillation.seed = seed;
  CoefficientField f =
      parse_coefficient(cfg, "rhs", CoefficientField::constant(0.0));
  CoefficientField psi =
      parse_coefficient(cfg, "boundary", CoefficientField::constant(0.0));
  const double gap_le = cfg.get_double("expect.gap_le", -1.0);
  check_consumed(cfg);
  (void)em;

  GapReport gr = approximation_gap(op, grid, f, as_fn(psi), gc);
  if (!gr.converged) throw std::runtime_error("approximation: solve failed");

  rep.put("gap.value", gr.gap);
  rep.put("gap.inputs.beta_bar_norm", gr.inputs.beta_bar_norm);
  rep.put("gap.inputs.f_norm", gr.inputs.f_norm);
  rep.put("gap.inputs.b_term", gr.inputs.b_term);
  rep.put("gap.inputs.mu_term", gr.inputs.mu_term);
  rep.put("gap.inputs.d_term", gr.inputs.d_term);
  rep.put("gap.inputs.total", gr.inputs.total);
  if (gap_le >= 0.0) ex.that(gr.gap <= gap_le, "gap <= expect.gap_le");
}

// --------------------------------------------------- bound certificate -----

void run_bound_certificate(const Config& cfg, std::uint64_t seed, Report& rep,
                           Emitter& em, Expect& ex) {
  Domain dom = parse_domain(cfg);
  GridPtr grid = parse_grid(cfg, dom);
  OperatorSpec op = parse_operator(cfg);
  CoefficientField c =
      parse_coefficient(cfg, "weight", CoefficientField::constant(1.0));
  const Point center = pt(cfg.get_double("certificate.cx", 0.0),
                          cfg.get_double("certificate.cy", 0.0));
  const double R = cfg.get_double("certificate.R");
  const bool run_eig = cfg.get_bool("certificate.run_eigen", true);
  const bool expect_verified = cfg.get_bool("expect.verified", true);
  const bool expect_covers = cfg.get_bool("expect.covers_alpha", run_eig);
  EigenConfig ec = parse_eigen(cfg, grid->dim());
  ExtremalSign branch = parse_branch(cfg);
  check_consumed(cfg);
  (void)seed;
  (void)em;

  SigmaCertificate cert =
      eigen_upper_bound_sigma(op.params(), c, grid, center, R);
  rep.put("certificate.R", cert.R);
  rep.put("certificate.delta", cert.delta);
  rep.put("certificate.gamma", cert.gamma);
  rep.put("certificate.eta", cert.eta);
  rep.put("certificate.C0", cert.C0);
  rep.put("certificate.bound", cert.bound);
  rep.put("certificate.max_field", cert.max_field);
  rep.put("certificate.nodes", cert.nodes);
  rep.put("certificate.verified", cert.verified);
  if (expect_verified) ex.that(cert.verified, "verification field <= 0");

  if (run_eig) {
    EigenPair pair = eigen_solve(op, c, grid, branch, ec);
    if (!pair.converged)
      throw std::runtime_error("certificate: eigen solve did not converge");
    rep.put("eigen.alpha", pair.alpha);
    rep.put("eigen.residual", pair.residual);
    if (expect_covers)
      ex.that(pair.alpha <= cert.bound + 1e-6,
              "computed alpha within the certificate bound");
  }
}

// --------------------------------------------------------------- nagumo ----

void run_nagumo(const Config& cfg, std::uint64_t seed, Report& rep, Emitter& em,
                Expect& ex) {
  Domain dom = parse_domain(cfg);
  OperatorSpec op = parse_operator(cfg);
  SolveConfig sc = parse_solve(cfg, dom.dim());
  CoefficientField f =
      parse_coefficient(cfg, "rhs", CoefficientField::constant(0.0));
  CoefficientField psi =
      parse_coefficient(cfg, "boundary", CoefficientField::constant(0.0));
  const double p = cfg.get_double("nagumo.p", dom.dim() + 1.0);
  const std::vector<double> hs =
      cfg.get_list("nagumo.hs", {1.0 / 32, 1.0 / 64, 1.0 / 128});
  const bool expect_stable = cfg.get_bool("expect.stable", true);
  check_consumed(cfg);
  (void)seed;

  NagumoReport nr = nagumo_check(op, dom, f, as_fn(psi), p, hs, sc);
  std::vector<std::vector<double>> rows;
  for (const NagumoLevel& lv : nr.levels) {
    if (!lv.converged)
      throw std::runtime_error("nagumo: solve failed at h = " +
                               format_g17(lv.h));
    rows.push_back({lv.h, lv.w2p, lv.bracket, lv.ratio, lv.sup_u, lv.f_norm,
                    lv.psi_w2p, lv.d_part});
  }
  write_csv(em.path("levels.csv"),
            {"h", "w2p", "bracket", "ratio", "sup_u", "f_norm", "psi_w2p",
             "d_part"},
            rows);
  em.note("levels.csv");

  rep.put("nagumo.p", nr.p);
  rep.put("nagumo.growth", nr.growth);
  rep.put("nagumo.refinement_stable", nr.refinement_stable);
  {
    std::vector<double> ratios;
    for (const NagumoLevel& lv : nr.levels) ratios.push_back(lv.ratio);
    rep.put_array("nagumo.ratios", ratios);
  }
  if (expect_stable)
    ex.that(nr.refinement_stable, "W^{2,p} ratio refinement-stable");
}

using Runner = void (*)(const Config&, std::uint64_t, Report&, Emitter&,
                        Expect&);

Runner find_runner(const std::string& kind) {
  if (kind == "solve") return run_solve;
  if (kind == "eigen") return run_eigen;
  if (kind == "abp_batch") return run_abp_batch;
  if (kind == "regularity") return run_regularity;
  if (kind == "oscillation") return run_oscillation;
  if (kind == "approximation") return run_approximation;
  if (kind == "bound_certificate") return run_bound_certificate;
  if (kind == "nagumo") return run_nagumo;
  bad("kind must be one of solve | eigen | abp_batch | regularity | "
      "oscillation | approximation | bound_certificate | nagumo");
}

}  // namespace

ExperimentOutcome run_experiment(const Config& cfg, const std::string& out_dir,
                                 std::optional<std::uint64_t> seed_override) {
  ExperimentOutcome out;
  std::string kind;
  std::uint64_t seed = 1234;
  try {
    kind = cfg.get_string("kind");
    seed = seed_override ? *seed_override
                         : static_cast<std::uint64_t>(cfg.get_int("seed", 1234));
    if (cfg.has("seed")) cfg.touch("seed");
    std::filesystem::create_directories(out_dir);
  } catch (const std::exception& e) {
    out.exit_code = 2;
    out.message = e.what();
    return out;
  }

  Report rep(kind, seed);
  rep.put_manifest("config", cfg.text());
  Emitter em{out_dir, {}};
  Expect ex;

  Runner runner = nullptr;
  try {
    runner = find_runner(kind);
    runner(cfg, seed, rep, em, ex);
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.message = e.what();
    return out;
  } catch (const std::exception& e) {
    rep.set_status("error", e.what());
    rep.write(em.path("report.json"));
    em.note("report.json");
    Report::write_manifest(em.path("manifest.json"), kind, seed,
                           fnv1a64_hex(cfg.text()), em.files);
    out.exit_code = 3;
    out.message = e.what();
    out.files.push_back(em.path("report.json"));
    out.files.push_back(em.path("manifest.json"));
    return out;
  }

  if (ex.failures.empty()) {
    rep.set_status("ok");
    out.exit_code = 0;
    out.message = "pass";
  } else {
    std::string joined;
    for (const auto& f : ex.failures)
      joined += (joined.empty() ? "" : "; ") + f;
    rep.set_status("expectation_failed", joined);
    out.exit_code = 1;
    out.message = joined;
  }
  rep.put("expect.failures", static_cast<std::int64_t>(ex.failures.size()));
  rep.write(em.path("report.json"));
  em.note("report.json");
  Report::write_manifest(em.path("manifest.json"), kind, seed,
                         fnv1a64_hex(cfg.text()), em.files);
  for (const auto& [name, hash] : em.files) out.files.push_back(em.path(name));
  out.files.push_back(em.path("manifest.json"));
  return out;
}

std::string describe_experiment(const Config& cfg) {
  const std::string kind = cfg.get_string("kind");
  find_runner(kind);  // validates the kind
  std::ostringstream os;
  os << "kind: " << kind << "\n";
  const std::uint64_t seed =
      static_cast<std::uint64_t>(cfg.get_int("seed", 1234));
  os << "seed: " << seed << "\n";

  if (cfg.has("domain.shape")) {
    Domain dom = parse_domain(cfg);
    os << "domain: " << dom.describe() << "\n";
    if (cfg.has("grid.h")) {
      GridPtr grid = parse_grid(cfg, dom);
      os << "grid: h = " << format_g17(grid->h()) << ", "
         << grid->n_interior() << " interior + " << grid->n_boundary()
         << " boundary nodes\n";
    }
  }
  if (!cfg.keys_under("operator").empty()) {
    OperatorSpec op = parse_operator(cfg);
    os << "operator: " << op.label() << "\n";
  }

  if (kind == "solve") {
    os << "plan: monotone Dirichlet solve, residual target "
       << format_g17(cfg.get_double("solve.tol", 1e-8))
       << ", two-sided boundary-excess check\n";
  } else if (kind == "eigen") {
    const long levels = cfg.get_int("eigen.eps_levels", 11);
    os << "plan: inverse-power continuation, branch "
       << cfg.get_string("eigen.branch", "plus") << ", eps = 1..2^-"
       << (levels - 1) << ", positivity + boundary quotient checks\n";
  } else if (kind == "abp_batch") {
    os << "plan: " << cfg.get_int("batch.count", 100)
       << " randomized instances, boundary-excess ratio vs one-sided source "
          "norms, cap check\n";
  } else if (kind == "regularity") {
    os << "plan: Caffarelli affine-fit ladder, gamma = "
       << format_g17(cfg.get_double("regularity.gamma", 0.25))
       << ", K = " << cfg.get_int("regularity.K", 6)
       << ", exponent from the log-log slope\n";
  } else if (kind == "oscillation") {
    os << "plan: coefficient-oscillation sup and normalized local average\n";
  } else if (kind == "approximation") {
    os << "plan: full vs frozen-coefficient solve, sup gap with smallness "
          "inputs\n";
  } else if (kind == "bound_certificate") {
    os << "plan: quartic barrier verification field on B_R, bound "
          "C0/(delta R^2)"
       << (cfg.get_bool("certificate.run_eigen", true)
               ? ", cross-checked against the computed eigenvalue\n"
               : "\n");
  } else if (kind == "nagumo") {
    os << "plan: interior second-difference mass vs data bracket across "
          "grid sizes\n";
  }

  for (const auto& k : cfg.keys()) cfg.touch(k);
  return os.str();
}

std::string config_grammar() {
  return R"(viscolab experiment config: line-oriented `key = value`, `#` comments,
dotted sections, numbers may be fractions (1/128). Unknown keys are rejected.

common
  kind                  solve | eigen | abp_batch | regularity | oscillation |
                        approximation | bound_certificate | nagumo
  seed                  integer, default 1234 (CLI --seed overrides)
  domain.shape          interval | rectangle | disc | half_disc
  domain.a, domain.b    interval end points
  domain.ax/bx/ay/by    rectangle extents
  domain.cx, domain.cy  disc centre (default 0)
  domain.radius         disc / half_disc radius
  domain.nu             half_disc flat-side offset in [0, radius]
  grid.h                lattice spacing

coefficient blocks (operator.b, operator.d, operator.a, weight, rhs,
boundary, reference, profile)
  <p>.kind              constant | affine | oscillatory | singular | radial |
                        abs_power
  constant:   <p>.value
  affine:     <p>.a0 <p>.gx <p>.gy
  oscillatory:<p>.amp <p>.kx <p>.ky <p>.phase <p>.offset
              offset + amp sin(kx x + phase) cos(ky y)
  singular:   <p>.kappa <p>.s <p>.cx <p>.cy      kappa |x - c|^{-s}
  radial:     <p>.c0 <p>.c2 <p>.c4 <p>.cx <p>.cy c0 + c2 r^2 + c4 r^4
  abs_power:  <p>.amp <p>.exponent <p>.cx <p>.cy amp |x - c|^e

operator
  operator.kind         extremal | trace (default extremal)
  operator.sign         plus | minus (extremal branch)
  operator.lambda, operator.Lambda, operator.mu
  operator.b.*, operator.d.*   lower-order coefficient blocks
  operator.omega.kind   lipschitz | power
  operator.omega.L | operator.omega.c, operator.omega.gamma
  operator.a.*          trace coefficient block (trace kind)

solve
  solve.tol solve.max_sweeps solve.stencil solve.policy
  solve.max_policy_iterations solve.gradient (upwind | centered)
  solve.rho_safety solve.force_non_monotone
  solve.mu_gate_delta solve.mu_gate_p

eigen
  eigen.branch          plus | minus
  eigen.tol_alpha eigen.tol_field eigen.max_power_steps
  eigen.eps_levels      continuation levels 1, 1/2, ..., 2^{1-levels}
  weight.*              weight coefficient block (default constant 1)

kind-specific
  solve:          rhs.* boundary.* reference.* abp.p
                  expect.sup_error_le expect.residual_le
  eigen:          expect.alpha expect.alpha_rtol expect.hopf
  abp_batch:      batch.count batch.domains (1d|2d|both) batch.h1 batch.h2
                  expect.cap
  regularity:     regularity.source (solve|profile) profile.* rhs.* boundary.*
                  regularity.cx/cy/r0/gamma/K/min_nodes/method
                  expect.alpha expect.alpha_tol expect.zero_errors
  oscillation:    oscillation.x oscillation.x0 (comma lists)
                  oscillation.r oscillation.p oscillation.theta
                  expect.beta expect.beta_tol expect.within
  approximation:  gap.p gap.A gap.Bx gap.By rhs.* boundary.* expect.gap_le
  bound_certificate: certificate.cx/cy/R certificate.run_eigen weight.*
                  expect.verified expect.covers_alpha
  nagumo:         nagumo.p nagumo.hs rhs.* boundary.* expect.stable

outputs: report.json (viscolab.report.v1), kind-specific CSV artifacts and
manifest.json listing every emitted file with its FNV-1a content hash.
exit codes: 0 pass, 1 expectation failed, 2 config error, 3 solver failure.
)";
}

}  // namespace viscolab
