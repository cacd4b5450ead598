#include "viscolab/scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace viscolab {
namespace {

struct AxisSlope {
  int choice = 0;      // 0 none, 1 forward arm, 2 backward arm
  double value = 0.0;  // selected nonnegative slope
};

}  // namespace

struct MonotoneScheme::NodeEval {
  int frame = 0;                      // selected orthogonal frame index
  std::vector<double> deltas;         // per frame-direction second difference
  std::vector<double> coefs;          // envelope slope per frame direction
  double core = 0.0;                  // frame-extremal second-order value
  std::array<AxisSlope, 2> slopes;    // upwind selection per axis
  double gnorm = 0.0;
  int zero_branch = 0;                // 1 when the zero-order term is active
  double value = 0.0;                 // full F_h
};

MonotoneScheme::MonotoneScheme(OperatorSpec op, GridPtr grid,
                               StencilConfig stencil,
                               GradientDiscretization grad)
    : op_(std::move(op)), grid_(std::move(grid)), stencil_(stencil),
      grad_(grad) {
  stencil_.validate(grid_->dim());
  const auto& p = op_.params();
  auto b = p.b.snapped(*grid_);
  auto d = p.d.snapped(*grid_);
  b_vals_.resize(grid_->n_interior());
  d_vals_.resize(grid_->n_interior());
  for (int i = 0; i < grid_->n_interior(); ++i) {
    b_vals_[i] = b(grid_->pos(i));
    d_vals_[i] = d(grid_->pos(i));
  }
  if (op_.kind() == OperatorSpec::Kind::ScaledTrace) {
    auto a = op_.trace_coefficient().snapped(*grid_);
    a_vals_.resize(grid_->n_interior());
    for (int i = 0; i < grid_->n_interior(); ++i) {
      a_vals_[i] = a(grid_->pos(i));
      if (!(a_vals_[i] > 0.0))
        throw std::invalid_argument(
            "MonotoneScheme: scaled_trace coefficient must be positive");
    }
  }
}

bool MonotoneScheme::supports_policy() const {
  return op_.kind() != OperatorSpec::Kind::Custom &&
         grad_ == GradientDiscretization::Upwind;
}

MonotoneScheme::NodeEval MonotoneScheme::eval_parts(const GridFunction& u,
                                                    int node) const {
  NodeEval ev;
  const Grid& g = *grid_;
  const auto& p = op_.params();

  if (op_.kind() == OperatorSpec::Kind::ScaledTrace) {
    double acc = 0.0;
    ev.deltas.resize(g.dim());
    ev.coefs.assign(g.dim(), a_vals_[node]);
    for (int k = 0; k < g.dim(); ++k) {
      ev.deltas[k] = second_directional_diff(u, node, k);
      acc += ev.deltas[k];
    }
    ev.core = a_vals_[node] * acc;
    ev.value = ev.core;
    return ev;
  }

  if (op_.kind() == OperatorSpec::Kind::Custom) {
    auto d = discrete_derivs(u, node, stencil_);
    ev.value = op_.eval(g.pos(node), d.r, d.grad, d.hessian);
    return ev;
  }

  // Extremal branch.
  bool plus = op_.sign() == ExtremalSign::Plus;
  auto frames = g.frames(stencil_.m);
  double best = 0.0;
  int best_frame = 0;
  std::vector<double> best_deltas, best_coefs;
  for (size_t fi = 0; fi < frames.size(); ++fi) {
    double v = 0.0;
    std::vector<double> deltas, coefs;
    for (int k : frames[fi]) {
      double delta = second_directional_diff(u, node, k);
      double coef;
      if (plus)
        coef = delta >= 0.0 ? p.Lambda : p.lambda;
      else
        coef = delta >= 0.0 ? p.lambda : p.Lambda;
      deltas.push_back(delta);
      coefs.push_back(coef);
      v += coef * delta;
    }
    if (fi == 0 || (plus ? v > best : v < best)) {
      best = v;
      best_frame = static_cast<int>(fi);
      best_deltas = std::move(deltas);
      best_coefs = std::move(coefs);
    }
  }
  ev.frame = best_frame;
  ev.deltas = std::move(best_deltas);
  ev.coefs = std::move(best_coefs);
  ev.core = best;

  double s = plus ? 1.0 : -1.0;
  double low = 0.0;
  if (b_vals_[node] != 0.0 || p.mu != 0.0) {
    if (grad_ == GradientDiscretization::Centered) {
      ev.gnorm = norm2(central_gradient(u, node));
    } else {
      UpwindBias bias = plus ? UpwindBias::Raise : UpwindBias::Lower;
      double acc = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        const Arm& ap = g.arm(node, a, 0);
        const Arm& am = g.arm(node, a, 1);
        double fwd = (u[ap.node] - u[node]) / ap.len;
        double bwd = (u[node] - u[am.node]) / am.len;
        AxisSlope sl;
        if (bias == UpwindBias::Raise) {
          // candidates: D+ (forward arm), -D- (backward arm), 0
          if (fwd >= -bwd && fwd > 0.0) sl = {1, fwd};
          else if (-bwd > 0.0) sl = {2, -bwd};
        } else {
          // candidates: D- (backward arm), -D+ (forward arm), 0
          if (bwd >= -fwd && bwd > 0.0) sl = {2, bwd};
          else if (-fwd > 0.0) sl = {1, -fwd};
        }
        ev.slopes[a] = sl;
        acc += sl.value * sl.value;
      }
      ev.gnorm = std::sqrt(acc);
    }
    low = b_vals_[node] * ev.gnorm + p.mu * ev.gnorm * ev.gnorm;
  }

  double zo = 0.0;
  if (d_vals_[node] != 0.0) {
    double part = plus ? neg_part(u[node]) : pos_part(u[node]);
    if (part > 0.0) {
      ev.zero_branch = 1;
      zo = d_vals_[node] * p.omega(part);
    }
  }

  ev.value = ev.core + s * (low + zo);
  return ev;
}

void MonotoneScheme::set_linear_zero_order(std::vector<double> c_interior) {
  if (static_cast<int>(c_interior.size()) != grid_->n_interior())
    throw std::invalid_argument(
        "MonotoneScheme: linear zero-order size mismatch");
  linear_c_ = std::move(c_interior);
}

double MonotoneScheme::eval(const GridFunction& u, int node) const {
  double v = eval_parts(u, node).value;
  if (!linear_c_.empty()) v += linear_c_[node] * u[node];
  return v;
}

double MonotoneScheme::local_bound(const GridFunction& u, int node) const {
  const Grid& g = *grid_;
  const auto& p = op_.params();

  // Second-order part: worst frame sum of weights times the top ellipticity.
  double second = 0.0;
  auto frames = g.frames(stencil_.m);
  for (const auto& frame : frames) {
    double sum = 0.0;
    for (int k : frame) {
      const Arm& ap = g.arm(node, k, 0);
      const Arm& am = g.arm(node, k, 1);
      sum += 2.0 / (ap.len * am.len);  // c+ + c- = 2/(s+ s-)
    }
    second = std::max(second, sum);
  }
  double top = op_.kind() == OperatorSpec::Kind::ScaledTrace ? a_vals_[node]
                                                             : p.Lambda;
  double bound = top * second;

  if (op_.kind() == OperatorSpec::Kind::Extremal &&
      (b_vals_[node] != 0.0 || p.mu != 0.0)) {
    double smin = 1e300, g_est = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const Arm& ap = g.arm(node, a, 0);
      const Arm& am = g.arm(node, a, 1);
      smin = std::min({smin, ap.len, am.len});
      double fwd = std::abs(u[ap.node] - u[node]) / ap.len;
      double bwd = std::abs(u[node] - u[am.node]) / am.len;
      g_est = std::max({g_est, fwd, bwd});
    }
    double gn = g_est * std::sqrt(static_cast<double>(g.dim()));
    bound += (b_vals_[node] + 2.0 * p.mu * gn) *
             std::sqrt(static_cast<double>(g.dim())) / smin;
  }
  if (op_.kind() == OperatorSpec::Kind::Extremal && d_vals_[node] != 0.0) {
    if (p.omega.is_lipschitz()) {
      bound += d_vals_[node] * p.omega.omega1();
    } else {
      double eps = 1e-3;
      bound += d_vals_[node] * p.omega(eps) / eps;
    }
  }
  if (!linear_c_.empty()) bound += std::abs(linear_c_[node]);
  return bound;
}

MonotoneScheme::Row MonotoneScheme::policy_row(const GridFunction& u,
                                               int node) const {
  if (!supports_policy())
    throw std::logic_error("MonotoneScheme: policy unsupported for this kind");
  const Grid& g = *grid_;
  const auto& p = op_.params();
  NodeEval ev = eval_parts(u, node);

  Row row;
  auto add = [&row](int col, double c) {
    if (c != 0.0) row.coeffs.emplace_back(col, c);
  };

  // Second-order part.
  std::vector<int> frame_dirs;
  if (op_.kind() == OperatorSpec::Kind::ScaledTrace) {
    frame_dirs.resize(g.dim());
    for (int k = 0; k < g.dim(); ++k) frame_dirs[k] = k;
  } else {
    frame_dirs = g.frames(stencil_.m)[ev.frame];
  }
  for (size_t idx = 0; idx < frame_dirs.size(); ++idx) {
    int k = frame_dirs[idx];
    const Arm& ap = g.arm(node, k, 0);
    const Arm& am = g.arm(node, k, 1);
    double cp = 2.0 / (ap.len * (ap.len + am.len));
    double cm = 2.0 / (am.len * (ap.len + am.len));
    double coef = ev.coefs[idx];
    add(ap.node, coef * cp);
    add(am.node, coef * cm);
    add(node, -coef * (cp + cm));
  }

  if (op_.kind() == OperatorSpec::Kind::Extremal) {
    bool plus = op_.sign() == ExtremalSign::Plus;
    double s = plus ? 1.0 : -1.0;

    // Gradient terms, linearized at the frozen upwind selection. The slope
    // expressions are linear in u, so b*g + mu*g^2 = sum_a (b w_a + mu v_a)
    // v_a(u) holds exactly at the current iterate.
    if ((b_vals_[node] != 0.0 || p.mu != 0.0) && ev.gnorm > 0.0) {
      for (int a = 0; a < g.dim(); ++a) {
        const AxisSlope& sl = ev.slopes[a];
        if (sl.choice == 0 || sl.value == 0.0) continue;
        double w = sl.value / ev.gnorm;
        double factor = s * (b_vals_[node] * w + p.mu * sl.value);
        const Arm& arm = g.arm(node, a, sl.choice == 1 ? 0 : 1);
        // Raise: v = (u_nb - u_0)/len for both arms; Lower: v = (u_0 - u_nb)/len.
        double sgn = plus ? 1.0 : -1.0;
        add(arm.node, factor * sgn / arm.len);
        add(node, -factor * sgn / arm.len);
      }
    }

    // Zero-order term.
    if (ev.zero_branch) {
      double part = plus ? neg_part(u[node]) : pos_part(u[node]);
      if (p.omega.is_lipschitz()) {
        // s=+: +d w(u^-) = -d L u_0 on the active branch;
        // s=-: -d w(u^+) = -d L u_0. Both add a proper (negative) diagonal.
        add(node, -d_vals_[node] * p.omega.omega1());
      } else {
        row.constant += s * d_vals_[node] * p.omega(part);
      }
    }
  }
  if (!linear_c_.empty()) add(node, linear_c_[node]);
  return row;
}

std::uint64_t MonotoneScheme::policy_signature(const GridFunction& u) const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (int node = 0; node < grid_->n_interior(); ++node) {
    NodeEval ev = eval_parts(u, node);
    std::uint64_t code = static_cast<std::uint64_t>(ev.frame);
    for (size_t i = 0; i < ev.coefs.size(); ++i)
      code = code * 7 + (ev.coefs[i] == op_.params().Lambda ? 1 : 2);
    code = code * 5 + ev.slopes[0].choice;
    code = code * 5 + ev.slopes[1].choice;
    code = code * 3 + ev.zero_branch;
    mix(code);
  }
  return h;
}

}  // namespace viscolab
