#include "viscolab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace viscolab {
namespace {

constexpr double kBoundaryTol = 1e-9;

/// Smallest root in (0, tmax] of |p + t s - c|^2 = R^2, if any.
std::optional<double> circle_hit(Point p, Point s, Point c, double R,
                                 double tmax) {
  Point q = p - c;
  double A = dot(s, s);
  double B = 2.0 * dot(q, s);
  double C = dot(q, q) - R * R;
  double disc = B * B - 4.0 * A * C;
  if (disc < 0.0 || A == 0.0) return std::nullopt;
  double sq = std::sqrt(disc);
  for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
    if (t > 0.0 && t <= tmax) return t;
  }
  return std::nullopt;
}

std::optional<double> plane_hit(double p, double s, double target,
                                double tmax) {
  if (s == 0.0) return std::nullopt;
  double t = (target - p) / s;
  if (t > 0.0 && t <= tmax) return t;
  return std::nullopt;
}

void keep_min(std::optional<double>& best, std::optional<double> cand) {
  if (cand && (!best || *cand < *best)) best = cand;
}

}  // namespace

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("Domain: need a < b");
  Domain d;
  d.shape_ = Shape::Interval;
  d.dim_ = 1;
  d.lo_ = pt(a);
  d.hi_ = pt(b);
  return d;
}

Domain Domain::rectangle(double ax, double bx, double ay, double by) {
  if (!(ax < bx && ay < by))
    throw std::invalid_argument("Domain: degenerate rectangle");
  Domain d;
  d.shape_ = Shape::Rectangle;
  d.dim_ = 2;
  d.lo_ = pt(ax, ay);
  d.hi_ = pt(bx, by);
  return d;
}

Domain Domain::disc(Point center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Domain: radius must be > 0");
  Domain d;
  d.shape_ = Shape::Disc;
  d.dim_ = 2;
  d.center_ = center;
  d.radius_ = radius;
  d.lo_ = center - pt(radius, radius);
  d.hi_ = center + pt(radius, radius);
  return d;
}

Domain Domain::half_disc(double radius, double nu) {
  if (!(radius > 0.0)) throw std::invalid_argument("Domain: radius must be > 0");
  if (nu < 0.0 || nu > radius)
    throw std::invalid_argument("Domain: need 0 <= nu <= radius");
  Domain d;
  d.shape_ = Shape::HalfDisc;
  d.dim_ = 2;
  d.center_ = pt(0, 0);
  d.radius_ = radius;
  d.nu_ = nu;
  d.lo_ = pt(-radius, -nu);
  d.hi_ = pt(radius, radius);
  return d;
}

bool Domain::contains(Point p) const {
  switch (shape_) {
    case Shape::Interval:
      return p[0] > lo_[0] && p[0] < hi_[0];
    case Shape::Rectangle:
      return p[0] > lo_[0] && p[0] < hi_[0] && p[1] > lo_[1] && p[1] < hi_[1];
    case Shape::Disc:
      return dist(p, center_) < radius_ * (1.0 - 1e-14);
    case Shape::HalfDisc:
      return dist(p, center_) < radius_ * (1.0 - 1e-14) && p[1] > -nu_;
  }
  return false;
}

double Domain::diameter() const {
  switch (shape_) {
    case Shape::Interval:
      return hi_[0] - lo_[0];
    case Shape::Rectangle:
      return dist(lo_, hi_);
    case Shape::Disc:
      return 2.0 * radius_;
    case Shape::HalfDisc: {
      // Chord length at y = -nu vs. any diameter through the arc.
      double chord = 2.0 * std::sqrt(radius_ * radius_ - nu_ * nu_);
      double top = radius_ + nu_;
      return std::max(chord, std::hypot(chord / 2, top));
    }
  }
  return 0.0;
}

double Domain::measure() const {
  switch (shape_) {
    case Shape::Interval:
      return hi_[0] - lo_[0];
    case Shape::Rectangle:
      return (hi_[0] - lo_[0]) * (hi_[1] - lo_[1]);
    case Shape::Disc:
      return M_PI * radius_ * radius_;
    case Shape::HalfDisc: {
      // Disc area minus the circular segment below the chord y = -nu.
      double r = radius_, t = nu_ / r;
      double segment = r * r * (std::acos(t) - t * std::sqrt(1.0 - t * t));
      return M_PI * r * r - segment;
    }
  }
  return 0.0;
}

double Domain::boundary_distance(Point p) const {
  switch (shape_) {
    case Shape::Interval:
      return std::min(p[0] - lo_[0], hi_[0] - p[0]);
    case Shape::Rectangle:
      return std::min({p[0] - lo_[0], hi_[0] - p[0], p[1] - lo_[1],
                       hi_[1] - p[1]});
    case Shape::Disc:
      return radius_ - dist(p, center_);
    case Shape::HalfDisc:
      return std::min(radius_ - dist(p, center_), p[1] + nu_);
  }
  return 0.0;
}

std::optional<double> Domain::ray_exit(Point p, Point step) const {
  std::optional<double> best;
  switch (shape_) {
    case Shape::Interval:
      keep_min(best, plane_hit(p[0], step[0], lo_[0], 1.0));
      keep_min(best, plane_hit(p[0], step[0], hi_[0], 1.0));
      break;
    case Shape::Rectangle:
      keep_min(best, plane_hit(p[0], step[0], lo_[0], 1.0));
      keep_min(best, plane_hit(p[0], step[0], hi_[0], 1.0));
      keep_min(best, plane_hit(p[1], step[1], lo_[1], 1.0));
      keep_min(best, plane_hit(p[1], step[1], hi_[1], 1.0));
      break;
    case Shape::Disc:
      keep_min(best, circle_hit(p, step, center_, radius_, 1.0));
      break;
    case Shape::HalfDisc:
      keep_min(best, circle_hit(p, step, center_, radius_, 1.0));
      keep_min(best, plane_hit(p[1], step[1], -nu_, 1.0));
      break;
  }
  return best;
}

BoundaryPortion Domain::classify_boundary(Point p) const {
  if (shape_ != Shape::HalfDisc) return BoundaryPortion::Whole;
  if (std::abs(p[1] + nu_) < kBoundaryTol) return BoundaryPortion::Flat;
  return BoundaryPortion::Curved;
}

std::string Domain::describe() const {
  char buf[128];
  switch (shape_) {
    case Shape::Interval:
      std::snprintf(buf, sizeof buf, "interval(%g, %g)", lo_[0], hi_[0]);
      break;
    case Shape::Rectangle:
      std::snprintf(buf, sizeof buf, "rectangle(%g, %g) x (%g, %g)", lo_[0],
                    hi_[0], lo_[1], hi_[1]);
      break;
    case Shape::Disc:
      std::snprintf(buf, sizeof buf, "disc(center=(%g, %g), R=%g)", center_[0],
                    center_[1], radius_);
      break;
    case Shape::HalfDisc:
      std::snprintf(buf, sizeof buf, "half_disc(R=%g, nu=%g)", radius_, nu_);
      break;
  }
  return buf;
}

}  // namespace viscolab
