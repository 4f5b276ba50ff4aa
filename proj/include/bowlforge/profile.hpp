#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bowlforge/constraint.hpp"
#include "bowlforge/speed.hpp"
#include "bowlforge/translator_ode.hpp"

namespace bowlforge {

struct BowlSample {
  double r;
  double u;
  double v;
  double v_prime;
  double kappa1;
  double kappa_rot;
  double residual;  // NaN when no speed was supplied
};

struct AsymptoticFit {
  double exponent = 0.0;
  double constant = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double expected_exponent = 0.0;  // alpha + 1
  double expected_constant = 0.0;  // 1 / ((alpha + 1) f(0, e))
};

struct BowlProfile {
  std::string speed_id;
  ProfileStatus status;
  std::vector<BowlSample> samples;
  std::optional<AsymptoticFit> asymptotic_fit;
};

/// Principal curvatures (kappa_1, kappa_rot) of the graph of u(|x|) with u' = v.
/// Requires r > 0.
std::pair<double, double> curvatures(double r, double v, double v_prime);

/// |f(kappa_1, kappa_rot e) - 1/sqrt(1+v^2)|. Throws DomainError if kappa_1 <= 0.
double residual(const SpeedFunction& speed, double r, double v, double v_prime);

/// u(r) = int_0^r v. Phase-r intervals integrate the continuous extension
/// exactly, the others use the endpoint-corrected trapezoid rule; [0, r_0] is
/// covered by gamma r_0^2 / 2 (or v_0 r_0 / 2 when no tip slope is known).
BowlProfile recover_u(const ProfileSolution& profile);
BowlProfile recover_u(const ProfileSolution& profile, const SpeedFunction& speed);

/// Fits u ~ C r^(alpha+1) over [0.19 r_end, r_end], the last decade of r
/// without its first tenth. The exponent is 1 + d log v / d log r fitted by
/// least squares; C is the geometric mean of u / r^(alpha+1) on the window.
/// Throws NotApplicable for degenerate speeds, profiles that did not reach a
/// horizon, or horizons below 100.
AsymptoticFit fit_asymptotics(const BowlProfile& bowl, const SpeedInvariants& invariants);

struct ConvexityReport {
  double min_vprime = 0.0;
  double min_v_over_r = 0.0;
  bool passed = false;
  std::optional<std::size_t> witness;  // first sample with v' <= 0 or v/r <= 0
};

ConvexityReport check_convexity(const BowlProfile& bowl);

/// Relative position of the samples with respect to the level-set barriers.
struct BarrierReport {
  double min_sub_margin = 0.0;    // min v / w_gamma - 1, >= -tol when the subsolution bound holds
  std::optional<double> max_super_excess;  // max v / w_gamma_plus - 1 (nondegenerate only)
  std::optional<std::size_t> sub_witness;
  std::optional<std::size_t> super_witness;
  bool sub_passed = false;
  bool super_passed = true;
};

/// Checks w_gamma <= v (and v <= w_gamma_plus when nondegenerate) at every
/// sample to relative tolerance `tol`.
BarrierReport check_barriers(const ConstraintContext& ctx, const ProfileSolution& profile,
                             double tol = 1e-12);

/// max(|kappa_1 - gamma|, |kappa_rot - gamma|) at r = 2 r_start.
double tip_curvature_deviation(const ConstraintContext& ctx, const ProfileSolution& profile);

}  // namespace bowlforge
