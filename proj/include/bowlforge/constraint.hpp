#pragma once

#include <optional>
#include <string>

#include "bowlforge/speed.hpp"

namespace bowlforge {

/// Window and quality thresholds for the power-law fit of g(y, 1) as y -> inf.
struct TailWindow {
  double y_lo = 1e3;
  double y_hi = 1e8;
  int points = 26;
  double rms_tol = 1e-3;    // log-space residual for a "good" fit
  double drift_tol = 5e-3;  // |slope(first half) - slope(second half)|
};

/// Least-squares exponent k in g(y, 1) ~ c y^(-k), with fit diagnostics.
struct TailFit {
  double exponent = 0.0;
  double log_constant = 0.0;
  double rms_residual = 0.0;
  double slope_drift = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
  bool good_fit = false;
};

/// Inverts the constraint f(x, y e) = 1 in either slot.
///
/// g(y) solves f(g(y), y e) = 1 for the first curvature; g1(x) solves
/// f(x, g1(x) e) = 1 for the rotational one. The domain of g is the open
/// interval (y_min, y_max): y_max = 1/f(0,e)^(1/alpha) (infinite for
/// degenerate speeds) and y_min = 1/f(inf,e)^(1/alpha) (zero when f(t, e)
/// is unbounded in t).
class ConstraintContext {
 public:
  explicit ConstraintContext(SpeedFunction speed, double degeneracy_tol = kDefaultDegeneracyTol);

  const SpeedFunction& speed() const noexcept { return speed_; }
  const SpeedInvariants& invariants() const noexcept { return invariants_; }
  double y_min() const noexcept { return y_min_; }
  double y_max() const noexcept { return y_max_; }
  bool in_domain(double y) const noexcept { return y > y_min_ && y < y_max_; }

  /// g(y, 1). `hint` seeds the exponential bracketing (default: gamma).
  double solve_g(double y, std::optional<double> hint = std::nullopt) const;

  /// g1(x, 1).
  double solve_g1(double x) const;

  /// L = lim_{y -> inf} g(y, 1) for degenerate speeds.
  double tail_limit() const;

  /// Power-law decay exponent of g(y, 1) for degenerate speeds with L = 0.
  TailFit tail_decay_exponent(const TailWindow& window = {}) const;

 private:
  SpeedFunction speed_;
  SpeedInvariants invariants_;
  double y_min_ = 0.0;
  double y_max_ = 0.0;
};

}  // namespace bowlforge
