#include "viscolab/coefficient.hpp"

#include <cmath>
#include <stdexcept>

namespace viscolab {

CoefficientField CoefficientField::constant(double v) {
  CoefficientField f;
  f.kind_ = Kind::Constant;
  f.value_ = v;
  char buf[48];
  std::snprintf(buf, sizeof buf, "constant(%g)", v);
  f.label_ = buf;
  return f;
}

CoefficientField CoefficientField::smooth(std::function<double(Point)> fn,
                                          std::string label) {
  if (!fn) throw std::invalid_argument("CoefficientField: empty callable");
  CoefficientField f;
  f.kind_ = Kind::Smooth;
  f.fn_ = std::move(fn);
  f.label_ = std::move(label);
  return f;
}

CoefficientField CoefficientField::singular(double kappa, Point center,
                                            double s) {
  if (kappa < 0.0 || s < 0.0)
    throw std::invalid_argument("CoefficientField: kappa, s must be >= 0");
  CoefficientField f;
  f.kind_ = Kind::Singular;
  f.value_ = kappa;
  f.center_ = center;
  f.s_ = s;
  char buf[96];
  std::snprintf(buf, sizeof buf, "singular(kappa=%g, s=%g)", kappa, s);
  f.label_ = buf;
  return f;
}

double CoefficientField::operator()(Point p) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Smooth:
      return fn_(p);
    case Kind::Singular: {
      double r = dist(p, center_);
      if (r < 1e-300) return 1e300;
      return value_ * std::pow(r, -s_);
    }
  }
  return 0.0;
}

CoefficientField CoefficientField::snapped(const Grid& grid) const {
  if (kind_ != Kind::Singular) return *this;
  CoefficientField f = *this;
  double h = grid.h();
  Point o = grid.lattice_origin();
  f.center_[0] =
      o[0] + (std::floor((center_[0] - o[0]) / h) + 0.5) * h;
  f.center_[1] = grid.dim() == 2
                     ? o[1] + (std::floor((center_[1] - o[1]) / h) + 0.5) * h
                     : 0.0;
  return f;
}

GridFunction CoefficientField::sample(GridPtr grid) const {
  CoefficientField f = snapped(*grid);
  return GridFunction::sample(std::move(grid),
                              [&f](Point p) { return f(p); });
}

double CoefficientField::sup_on(
    const Grid& grid, const std::function<bool(Point)>& where) const {
  CoefficientField f = snapped(grid);
  double m = 0.0;
  bool any = false;
  for (int id = 0; id < grid.n_interior(); ++id) {
    Point p = grid.pos(id);
    if (where && !where(p)) continue;
    m = any ? std::max(m, f(p)) : f(p);
    any = true;
  }
  if (!any) throw std::invalid_argument("CoefficientField: empty sup region");
  return m;
}

std::string CoefficientField::describe() const { return label_; }

}  // namespace viscolab
