#pragma once

#include <optional>
#include <string>

#include "viscolab/geometry.hpp"

namespace viscolab {

/// Part of the boundary a boundary point sits on. Flat/Curved are only
/// meaningful for half discs: Flat is the segment on {y = -nu}, Curved the
/// circular arc. Every other shape reports Whole.
enum class BoundaryPortion { Whole, Flat, Curved };

/// Computational domain in R^1 or R^2.
///
/// Supported shapes:
///   interval (a, b)
///   rectangle (ax, bx) x (ay, by)
///   disc B_R(center)
///   half_disc B_R(0) ∩ {y > -nu}, 0 <= nu <= R
class Domain {
 public:
  enum class Shape { Interval, Rectangle, Disc, HalfDisc };

  static Domain interval(double a, double b);
  static Domain rectangle(double ax, double bx, double ay, double by);
  static Domain disc(Point center, double radius);
  static Domain half_disc(double radius, double nu);

  Shape shape() const { return shape_; }
  int dim() const { return dim_; }

  /// Strict interior membership.
  bool contains(Point p) const;

  Point box_lo() const { return lo_; }
  Point box_hi() const { return hi_; }
  double diameter() const;
  double measure() const;

  /// Distance from an interior point to the boundary (exact per shape).
  double boundary_distance(Point p) const;

  /// Smallest t in (0, 1] such that p + t*step lies on the boundary, for an
  /// interior p. Returns nullopt when the whole segment stays interior.
  std::optional<double> ray_exit(Point p, Point step) const;

  /// Classify a point known to lie on the boundary.
  BoundaryPortion classify_boundary(Point p) const;

  /// Shape parameters (meaning depends on shape).
  Point center() const { return center_; }
  double radius() const { return radius_; }
  double nu() const { return nu_; }

  std::string describe() const;

 private:
  Domain() = default;
  Shape shape_ = Shape::Interval;
  int dim_ = 1;
  Point lo_{0, 0}, hi_{0, 0};   // bounding box
  Point center_{0, 0};
  double radius_ = 0.0;
  double nu_ = 0.0;
};

}  // namespace viscolab
