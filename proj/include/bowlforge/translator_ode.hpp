#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bowlforge/constraint.hpp"
#include "bowlforge/speed.hpp"

namespace bowlforge {

/// Numerical controls for integrating v' = (1+v^2)^(1+beta) g(v / (r (1+v^2)^beta), 1).
struct IntegrationConfig {
  double r_start = 1e-6;  // start on the gamma level set at this radius
  double r_max = 100.0;   // horizon
  double v_cap = 1e8;     // blow-up detection threshold on v
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double min_step = 1e-14;  // step collapse threshold (relative to max(1, r))

  /// Above this slope the independent variable switches from r to log v.
  double v_switch = 1e3;
  /// Minimal exponential decay rate of dr/dlog v that counts as a convergent
  /// tail, i.e. a finite blow-up radius.
  double tail_rate_min = 0.1;
  /// Bracket refinement continues past v_cap until the extrapolated tail is
  /// below this (relative to R) or v reaches v_ceiling.
  double tail_target = 1e-7;
  double v_ceiling = 1e30;
  /// Re-run from r_start / 2 and record the relative change.
  bool check_start_halving = true;
  long max_steps = 2'000'000;

  /// Throws std::invalid_argument on inconsistent settings or rel_tol below 4 eps.
  void validate() const;
};

enum class Termination {
  ReachedHorizon,
  BlewUp,      // R bracketed in [r_low, r_high]
  LeftDomain,  // the slope ratio left the domain of g, or the step size collapsed
  CapReached,  // v exceeded v_cap but no convergent blow-up tail was detected
};

struct ProfileStatus {
  Termination kind = Termination::ReachedHorizon;
  double r_low = 0.0;   // BlewUp bracket
  double r_high = 0.0;
  double r = 0.0;       // radius where integration stopped
  double v = 0.0;       // slope there
  double tail_rate = 0.0;  // decay rate of dr/dlog v at the end of the log-v phase
  std::string reason;
};

struct ProfileSample {
  double r;
  double v;
  double v_prime;
};

/// Per-interval interpolant between consecutive samples. Intervals stepped in
/// r carry the Dormand-Prince continuous extension; the others fall back to
/// cubic Hermite interpolation on (v, v').
struct DenseSegment {
  bool polynomial = false;
  std::array<double, 5> coeff{};
};

struct ProfileSolution {
  std::string speed_id;
  double tip_slope = 0.0;  // gamma; NaN for hand-built profiles
  double beta = 0.0;
  IntegrationConfig config;
  std::vector<ProfileSample> samples;  // r strictly increasing
  std::vector<DenseSegment> dense;     // dense[i] covers [samples[i].r, samples[i+1].r]; may be empty
  ProfileStatus status;
  long accepted_steps = 0;
  long rejected_steps = 0;
  /// Relative change of v at half the final radius when restarting from
  /// r_start / 2 (NaN when the check is disabled).
  double start_sensitivity = 0.0;

  double r_end() const { return samples.empty() ? 0.0 : samples.back().r; }
  /// v(r) from the dense output. Requires samples.front().r <= r <= r_end().
  double interpolate(double r) const;
};

/// (1+v^2)^(1+beta) g(v / (r (1+v^2)^beta), 1). Throws OutOfDomain when the
/// slope ratio leaves the domain of g.
double rhs(const ConstraintContext& ctx, double r, double v, std::optional<double> g_hint = std::nullopt);

ProfileSolution integrate(const ConstraintContext& ctx, const IntegrationConfig& config = {});
ProfileSolution integrate(const SpeedFunction& speed, const IntegrationConfig& config = {});

struct ConvergenceReport {
  std::vector<double> starts;
  std::vector<double> grid;
  std::vector<double> sup_diffs;       // sup |v_k - v_{k+1}| over the grid, consecutive starts
  std::vector<double> shrink_factors;  // sup_diffs[k] / sup_diffs[k+1]
  double fitted_rate = 0.0;            // log-log slope of sup_diffs against the start radius
  bool linear_shrink = false;          // every shrink factor >= (start ratio) / 2
};

/// Integrates once per start radius (strictly decreasing, all below r_ref) and
/// compares the runs on a common log-spaced grid [max(starts), r_ref].
ConvergenceReport start_convergence(const ConstraintContext& ctx, const std::vector<double>& starts,
                                    double r_ref = 1.0, IntegrationConfig config = {});

struct TipSlope {
  double gamma = 0.0;
  std::array<double, 3> probe_radii{};
  std::array<double, 3> probe_ratios{};  // v(r) / r from an integration
  double max_rel_deviation = 0.0;
};

/// v'(0) = gamma = 1/f(1,...,1)^(1/alpha), checked against v(r)/r of a short
/// integration at r_start * {1, 2, 4}.
TipSlope slope_at_origin(const ConstraintContext& ctx, double r_start = 1e-6);

const char* to_string(Termination t);

}  // namespace bowlforge
