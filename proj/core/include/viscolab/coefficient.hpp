#pragma once

#include <functional>
#include <string>

#include "viscolab/geometry.hpp"
#include "viscolab/grid.hpp"

namespace viscolab {

/// Scalar coefficient field on the domain (used for b, d, c and rhs data).
///
/// Kinds:
///   constant  v
///   smooth    arbitrary callable with a label
///   singular  kappa * |x - x0|^{-s}; admissible in L^p iff s*p < n.
///             The center is snapped to the nearest grid cell center before
///             sampling so every node keeps distance >= h/2 from it.
class CoefficientField {
 public:
  enum class Kind { Constant, Smooth, Singular };

  static CoefficientField constant(double v);
  static CoefficientField smooth(std::function<double(Point)> f,
                                 std::string label);
  static CoefficientField singular(double kappa, Point center, double s);

  Kind kind() const { return kind_; }
  double constant_value() const { return value_; }
  double kappa() const { return value_; }
  double exponent() const { return s_; }
  Point center() const { return center_; }
  const std::string& label() const { return label_; }

  bool is_zero() const { return kind_ == Kind::Constant && value_ == 0.0; }

  /// Pointwise evaluation. For singular fields the value at the exact center
  /// is clamped to a large finite number; snapped sampling never hits it.
  double operator()(Point p) const;

  /// True when |.|^{-s} lies in L^p of an n-dimensional domain: s*p < n.
  bool admissible_for(double p, int n) const {
    return kind_ != Kind::Singular || s_ * p < static_cast<double>(n);
  }

  /// Copy with the singular center snapped to the nearest cell center of the
  /// grid (no-op for other kinds).
  CoefficientField snapped(const Grid& grid) const;

  /// Field sampled at all grid nodes.
  GridFunction sample(GridPtr grid) const;

  /// max over the interior nodes of the grid (optionally within a predicate).
  double sup_on(const Grid& grid,
                const std::function<bool(Point)>& where = nullptr) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  double value_ = 0.0;
  double s_ = 0.0;
  Point center_{0, 0};
  std::function<double(Point)> fn_;
  std::string label_;
};

}  // namespace viscolab
