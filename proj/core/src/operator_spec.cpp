#include "viscolab/operator_spec.hpp"

#include <cmath>
#include <stdexcept>

#include "viscolab/rng.hpp"

namespace viscolab {

void StructureParams::validate() const {
  if (!(0.0 < lambda && lambda <= Lambda))
    throw std::invalid_argument("StructureParams: need 0 < lambda <= Lambda");
  if (mu < 0.0) throw std::invalid_argument("StructureParams: mu must be >= 0");
}

OperatorSpec OperatorSpec::extremal(ExtremalSign sign, StructureParams params) {
  params.validate();
  OperatorSpec op;
  op.kind_ = Kind::Extremal;
  op.sign_ = sign;
  op.params_ = std::move(params);
  op.label_ = sign == ExtremalSign::Plus ? "extremal(+)" : "extremal(-)";
  return op;
}

OperatorSpec OperatorSpec::pucci_pure(ExtremalSign sign, double lambda,
                                      double Lambda) {
  StructureParams p;
  p.lambda = lambda;
  p.Lambda = Lambda;
  auto op = extremal(sign, std::move(p));
  op.label_ = sign == ExtremalSign::Plus ? "pucci(+)" : "pucci(-)";
  return op;
}

OperatorSpec OperatorSpec::scaled_trace(CoefficientField a,
                                        StructureParams params) {
  params.validate();
  OperatorSpec op;
  op.kind_ = Kind::ScaledTrace;
  op.params_ = std::move(params);
  op.a_ = std::move(a);
  op.label_ = "scaled_trace(" + op.a_.describe() + ")";
  return op;
}

OperatorSpec OperatorSpec::custom(
    std::function<double(Point, double, Point, const SymMatrix&)> fn,
    StructureParams params, std::string label) {
  if (!fn) throw std::invalid_argument("OperatorSpec: empty callable");
  params.validate();
  OperatorSpec op;
  op.kind_ = Kind::Custom;
  op.params_ = std::move(params);
  op.fn_ = std::move(fn);
  op.label_ = std::move(label);
  return op;
}

bool OperatorSpec::is_pure_second_order() const {
  switch (kind_) {
    case Kind::Extremal:
      return params_.mu == 0.0 && params_.b.is_zero() && params_.d.is_zero();
    case Kind::ScaledTrace:
      return a_.kind() == CoefficientField::Kind::Constant;
    case Kind::Custom:
      return false;
  }
  return false;
}

double OperatorSpec::eval(Point x, double r, Point p,
                          const SymMatrix& X) const {
  switch (kind_) {
    case Kind::Extremal: {
      double core = pucci(X, params_.lambda, params_.Lambda, sign_);
      double grad = norm2(p);
      double low = params_.b(x) * grad + params_.mu * grad * grad;
      if (sign_ == ExtremalSign::Plus)
        return core + low + params_.d(x) * params_.omega(neg_part(r));
      return core - low - params_.d(x) * params_.omega(pos_part(r));
    }
    case Kind::ScaledTrace:
      return a_(x) * X.trace();
    case Kind::Custom:
      return fn_(x, r, p, X);
  }
  return 0.0;
}

OperatorSpec OperatorSpec::dual() const {
  switch (kind_) {
    case Kind::Extremal: {
      auto op = *this;
      op.sign_ = sign_ == ExtremalSign::Plus ? ExtremalSign::Minus
                                             : ExtremalSign::Plus;
      op.label_ = "dual(" + label_ + ")";
      return op;
    }
    case Kind::ScaledTrace:
      return *this;
    case Kind::Custom: {
      auto base = fn_;
      auto op = *this;
      op.fn_ = [base](Point x, double r, Point p, const SymMatrix& X) {
        return -base(x, -r, pt(-p[0], -p[1]), -X);
      };
      op.label_ = "dual(" + label_ + ")";
      return op;
    }
  }
  return *this;
}

bool OperatorSpec::is_one_homogeneous(int dim, std::uint64_t seed) const {
  Rng rng(seed);
  for (int s = 0; s < 64; ++s) {
    Point x = pt(rng.uniform(-0.4, 0.4), dim == 2 ? rng.uniform(-0.4, 0.4) : 0.0);
    double r = rng.normal(0, 1);
    Point p = pt(rng.normal(0, 1), dim == 2 ? rng.normal(0, 1) : 0.0);
    SymMatrix X = dim == 1 ? SymMatrix(rng.normal(0, 1))
                           : SymMatrix(rng.normal(0, 1), rng.normal(0, 1),
                                       rng.normal(0, 1));
    double base = eval(x, r, p, X);
    for (double t : {0.5, 2.0, 7.0}) {
      double scaled = eval(x, t * r, t * p, X.scaled(t));
      double tol = 1e-9 * (1.0 + std::abs(t * base));
      if (std::abs(scaled - t * base) > tol) return false;
    }
  }
  return true;
}

}  // namespace viscolab
