#pragma once

#include <optional>

namespace bowlforge {

/// Exact profile slope for the speed K^(alpha/n).
///
/// With g(y, 1) = y^-(n-1) the translator ODE separates:
///   int_0^v t^(n-1) (1+t^2)^-q dt = r^n / n,  q = 1 + n beta.
/// For n = 2 this inverts in closed form; otherwise the integral is evaluated
/// by adaptive Gauss-Kronrod quadrature and inverted by Brent's method.
class GaussSeparable {
 public:
  GaussSeparable(int dim, double alpha);

  int dim() const noexcept { return dim_; }
  double alpha() const noexcept { return alpha_; }
  double q() const noexcept { return q_; }

  /// R = (n I(inf))^(1/n) when the integral converges (alpha > n/2).
  std::optional<double> blowup_radius() const noexcept { return radius_; }

  /// v(r) for 0 <= r < R. Throws std::domain_error past the blow-up radius.
  double v(double r) const;

  /// int_0^v t^(n-1) (1+t^2)^-q dt.
  double integral(double v) const;

 private:
  int dim_;
  double alpha_;
  double q_;
  std::optional<double> radius_;
};

}  // namespace bowlforge
