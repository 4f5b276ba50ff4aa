#pragma once

#include <utility>

namespace bowlforge {

enum class BarrierKind { Subsolution, Supersolution, Neutral };

/// The curve w_m(r) defined implicitly by w / (r (1 + w^2)^beta) = m.
///
/// For beta < 1/2 the map w -> w / (1 + w^2)^beta is strictly increasing, so
/// w_m(r) is well defined, increasing in r and increasing in m. These curves
/// are the sub- and supersolutions of the translator ODE: m = gamma gives the
/// subsolution, m = gamma_plus the supersolution of a nondegenerate speed.
class BarrierCurve {
 public:
  /// Throws std::invalid_argument unless m > 0 and beta < 1/2.
  BarrierCurve(double m, double beta, BarrierKind kind = BarrierKind::Neutral);

  double m() const noexcept { return m_; }
  double beta() const noexcept { return beta_; }
  BarrierKind kind() const noexcept { return kind_; }
  /// The homogeneity degree alpha = 1 / (1 - 2 beta) matching beta.
  double alpha() const noexcept { return 1.0 / (1.0 - 2.0 * beta_); }

  /// w_m(r) to ~1e-15 relative accuracy. Requires r > 0.
  double w_of_r(double r) const;

  /// dw/dr expressed at a point w on the curve.
  double dw_dr(double w) const;

  /// Inverse map r(w) = w / (m (1 + w^2)^beta).
  double r_of_w(double w) const;

 private:
  double m_;
  double beta_;
  BarrierKind kind_;
};

/// Predicted large-r power laws: w ~ r^alpha and dw/dr ~ r^(alpha - 1).
std::pair<double, double> asymptotic_exponents(double alpha);

}  // namespace bowlforge
