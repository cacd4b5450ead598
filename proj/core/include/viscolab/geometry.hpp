#pragma once

#include <array>
#include <cmath>

namespace viscolab {

/// Point in R^1 or R^2. 1D data lives in component 0 with component 1 == 0,
/// so every routine can work on the same type; the active dimension is
/// carried by the surrounding Domain/Grid.
using Point = std::array<double, 2>;

inline Point pt(double x) { return {x, 0.0}; }
inline Point pt(double x, double y) { return {x, y}; }

inline Point operator+(Point a, Point b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Point operator-(Point a, Point b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Point operator*(double s, Point a) { return {s * a[0], s * a[1]}; }

inline double dot(Point a, Point b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm2(Point a) { return std::sqrt(dot(a, a)); }
inline double dist(Point a, Point b) { return norm2(a - b); }

inline double pos_part(double t) { return t > 0.0 ? t : 0.0; }
inline double neg_part(double t) { return t < 0.0 ? -t : 0.0; }

}  // namespace viscolab
