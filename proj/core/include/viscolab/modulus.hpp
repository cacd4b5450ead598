#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace viscolab {

/// Modulus of continuity for the zero-order term. Both kinds are closed under
/// the two rescaling maps used by the regularity experiments, so transformed
/// problems carry an exact Modulus instead of a sampled table:
///   blowup:    w'(r) = w(N r) / N
///   iteration: w'(s) = r^{-1-alpha} w(r^{1+alpha} s)
class Modulus {
 public:
  enum class Kind { Lipschitz, Power };

  static Modulus lipschitz(double L) {
    if (L < 0.0) throw std::invalid_argument("Modulus: L must be >= 0");
    return Modulus(Kind::Lipschitz, L, 1.0);
  }
  /// w(r) = c * r^gamma with gamma in (0, 1].
  static Modulus power(double c, double gamma) {
    if (c < 0.0) throw std::invalid_argument("Modulus: c must be >= 0");
    if (!(gamma > 0.0 && gamma <= 1.0))
      throw std::invalid_argument("Modulus: gamma must be in (0,1]");
    return Modulus(Kind::Power, c, gamma);
  }

  double operator()(double r) const {
    if (r <= 0.0) return 0.0;
    return c_ * std::pow(r, gamma_);
  }

  Kind kind() const { return kind_; }
  double coefficient() const { return c_; }
  double exponent() const { return gamma_; }
  double omega1() const { return c_; }  // w(1)
  bool is_lipschitz() const { return gamma_ == 1.0; }

  /// w'(r) = w(N r)/N, exact for both kinds.
  Modulus rescaled_blowup(double N) const {
    if (N <= 0.0) throw std::invalid_argument("Modulus: N must be > 0");
    return Modulus(kind_, c_ * std::pow(N, gamma_ - 1.0), gamma_);
  }

  /// w'(s) = r^{-1-alpha} w(r^{1+alpha} s), exact for both kinds.
  Modulus rescaled_iteration(double r, double alpha) const {
    if (r <= 0.0) throw std::invalid_argument("Modulus: r must be > 0");
    double f = std::pow(r, (1.0 + alpha) * (gamma_ - 1.0));
    return Modulus(kind_, c_ * f, gamma_);
  }

  std::string describe() const {
    char buf[96];
    if (kind_ == Kind::Lipschitz)
      std::snprintf(buf, sizeof buf, "lipschitz(L=%g)", c_);
    else
      std::snprintf(buf, sizeof buf, "power(c=%g, gamma=%g)", c_, gamma_);
    return buf;
  }

 private:
  Modulus(Kind k, double c, double gamma) : kind_(k), c_(c), gamma_(gamma) {}
  Kind kind_;
  double c_;
  double gamma_;
};

}  // namespace viscolab
