#include "viscolab/sym_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace viscolab {

SymMatrix SymMatrix::rotated_diag(double d1, double d2, double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return SymMatrix(c * c * d1 + s * s * d2, c * s * (d1 - d2),
                   s * s * d1 + c * c * d2);
}

std::array<double, 2> SymMatrix::eigenvalues() const {
  if (n_ == 1) return {a_[0], 0.0};
  double m = 0.5 * (a_[0] + a_[2]);
  double d = 0.5 * (a_[0] - a_[2]);
  double r = std::hypot(d, a_[1]);
  return {m - r, m + r};
}

double SymMatrix::spectral_norm() const {
  auto e = eigenvalues();
  if (n_ == 1) return std::abs(e[0]);
  return std::max(std::abs(e[0]), std::abs(e[1]));
}

double SymMatrix::frobenius_norm() const {
  if (n_ == 1) return std::abs(a_[0]);
  return std::sqrt(a_[0] * a_[0] + 2.0 * a_[1] * a_[1] + a_[2] * a_[2]);
}

double SymMatrix::quadratic_form(Point v) const {
  if (n_ == 1) return a_[0] * v[0] * v[0];
  return a_[0] * v[0] * v[0] + 2.0 * a_[1] * v[0] * v[1] +
         a_[2] * v[1] * v[1];
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
  SymMatrix r = *this;
  for (int i = 0; i < 3; ++i) r.a_[i] += o.a_[i];
  return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
  SymMatrix r = *this;
  for (int i = 0; i < 3; ++i) r.a_[i] -= o.a_[i];
  return r;
}

SymMatrix SymMatrix::operator-() const { return scaled(-1.0); }

SymMatrix SymMatrix::scaled(double s) const {
  SymMatrix r = *this;
  for (int i = 0; i < 3; ++i) r.a_[i] *= s;
  return r;
}

std::string SymMatrix::describe() const {
  char buf[128];
  if (n_ == 1)
    std::snprintf(buf, sizeof buf, "[%g]", a_[0]);
  else
    std::snprintf(buf, sizeof buf, "[%g, %g; %g, %g]", a_[0], a_[1], a_[1],
                  a_[2]);
  return buf;
}

double pucci_envelope(double t, double lambda, double Lambda,
                      ExtremalSign sign) {
  if (sign == ExtremalSign::Plus)
    return Lambda * pos_part(t) - lambda * neg_part(t);
  return lambda * pos_part(t) - Lambda * neg_part(t);
}

double pucci(const SymMatrix& X, double lambda, double Lambda,
             ExtremalSign sign) {
  if (!(0.0 < lambda && lambda <= Lambda))
    throw std::invalid_argument("pucci: need 0 < lambda <= Lambda");
  auto e = X.eigenvalues();
  double v = pucci_envelope(e[0], lambda, Lambda, sign);
  if (X.n() == 2) v += pucci_envelope(e[1], lambda, Lambda, sign);
  return v;
}

}  // namespace viscolab
