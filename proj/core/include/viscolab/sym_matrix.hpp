#pragma once

#include <array>
#include <string>

#include "viscolab/geometry.hpp"

namespace viscolab {

/// Symmetric matrix in dimension 1 or 2, stored as the upper triangle
/// (a11, a12, a22). Eigenvalues are closed form.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(double a11) : n_(1), a_{a11, 0.0, 0.0} {}
  SymMatrix(double a11, double a12, double a22) : n_(2), a_{a11, a12, a22} {}

  static SymMatrix zero(int n) { return n == 1 ? SymMatrix(0.0) : SymMatrix(0, 0, 0); }
  static SymMatrix identity(int n) { return n == 1 ? SymMatrix(1.0) : SymMatrix(1, 0, 1); }
  static SymMatrix diag(double d1, double d2) { return SymMatrix(d1, 0, d2); }

  /// R(theta) diag(d1, d2) R(theta)^T.
  static SymMatrix rotated_diag(double d1, double d2, double theta);

  /// s * v v^T for a unit direction v (2D).
  static SymMatrix outer(Point v, double s) {
    return SymMatrix(s * v[0] * v[0], s * v[0] * v[1], s * v[1] * v[1]);
  }

  int n() const { return n_; }
  double a11() const { return a_[0]; }
  double a12() const { return a_[1]; }
  double a22() const { return a_[2]; }
  double operator()(int i, int j) const {
    return i == j ? (i == 0 ? a_[0] : a_[2]) : a_[1];
  }

  double trace() const { return n_ == 1 ? a_[0] : a_[0] + a_[2]; }

  /// Eigenvalues sorted ascending; second entry unused in 1D.
  std::array<double, 2> eigenvalues() const;

  double spectral_norm() const;
  double frobenius_norm() const;

  /// v^T X v for a unit direction v.
  double quadratic_form(Point v) const;

  SymMatrix operator+(const SymMatrix& o) const;
  SymMatrix operator-(const SymMatrix& o) const;
  SymMatrix operator-() const;
  SymMatrix scaled(double s) const;

  std::string describe() const;

 private:
  int n_ = 2;
  std::array<double, 3> a_{0, 0, 0};
};

enum class ExtremalSign { Plus, Minus };

/// Pucci extremal operator value: sign Plus gives
/// Lambda*sum(e_i^+) - lambda*sum(e_i^-); Minus swaps the weights.
double pucci(const SymMatrix& X, double lambda, double Lambda,
             ExtremalSign sign);

/// Scalar envelopes applied eigenvalue-wise by pucci:
/// phi(t) = Lambda t^+ - lambda t^- (Plus), psi(t) = lambda t^+ - Lambda t^-.
double pucci_envelope(double t, double lambda, double Lambda,
                      ExtremalSign sign);

}  // namespace viscolab
