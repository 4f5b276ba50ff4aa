#include "bowlforge/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "bowlforge/error.hpp"
#include "bowlforge/level_set.hpp"
#include "bowlforge/numerics.hpp"

namespace bowlforge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// int_0^1 of c0 + t c1 + t(1-t) c2 + t^2 (1-t) c3 + t^2 (1-t)^2 c4.
double dense_mean(const std::array<double, 5>& c) {
  return c[0] + c[1] / 2.0 + c[2] / 6.0 + c[3] / 12.0 + c[4] / 30.0;
}

BowlProfile recover(const ProfileSolution& profile, const SpeedFunction* speed) {
  BowlProfile bowl;
  bowl.speed_id = profile.speed_id;
  bowl.status = profile.status;
  if (profile.samples.empty()) return bowl;

  const ProfileSample& first = profile.samples.front();
  double u = 0.0;
  if (first.r > 0.0) {
    u = std::isfinite(profile.tip_slope) && profile.tip_slope > 0.0
            ? 0.5 * profile.tip_slope * first.r * first.r
            : 0.5 * first.v * first.r;
  }
  bowl.samples.reserve(profile.samples.size());
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const ProfileSample& s = profile.samples[i];
    if (i > 0) {
      const ProfileSample& a = profile.samples[i - 1];
      const double h = s.r - a.r;
      if (i - 1 < profile.dense.size() && profile.dense[i - 1].polynomial)
        u += h * dense_mean(profile.dense[i - 1].coeff);
      else
        u += 0.5 * h * (a.v + s.v) + h * h * (a.v_prime - s.v_prime) / 12.0;
    }
    BowlSample b{s.r, u, s.v, s.v_prime, kNaN, kNaN, kNaN};
    if (s.r > 0.0) {
      std::tie(b.kappa1, b.kappa_rot) = curvatures(s.r, s.v, s.v_prime);
      if (speed != nullptr && b.kappa1 > 0.0 && b.kappa_rot > 0.0)
        b.residual = residual(*speed, s.r, s.v, s.v_prime);
    } else {
      b.kappa1 = s.v_prime / std::pow(1.0 + s.v * s.v, 1.5);
      b.kappa_rot = s.v == 0.0 ? s.v_prime : std::numeric_limits<double>::infinity();
    }
    bowl.samples.push_back(b);
  }
  return bowl;
}

}  // namespace

std::pair<double, double> curvatures(double r, double v, double v_prime) {
  if (!(r > 0.0)) throw std::invalid_argument("curvatures need r > 0");
  const double w = 1.0 + v * v;
  const double root = std::sqrt(w);
  return {v_prime / (w * root), v / (r * root)};
}

double residual(const SpeedFunction& speed, double r, double v, double v_prime) {
  const auto [k1, krot] = curvatures(r, v, v_prime);
  if (!(k1 > 0.0)) throw DomainError("residual needs kappa_1 > 0");
  return std::abs(speed.restricted(k1, krot) - 1.0 / std::sqrt(1.0 + v * v));
}

BowlProfile recover_u(const ProfileSolution& profile) { return recover(profile, nullptr); }

BowlProfile recover_u(const ProfileSolution& profile, const SpeedFunction& speed) {
  return recover(profile, &speed);
}

AsymptoticFit fit_asymptotics(const BowlProfile& bowl, const SpeedInvariants& invariants) {
  if (invariants.degenerate)
    throw NotApplicable("asymptotic fit needs a nondegenerate speed");
  if (bowl.status.kind != Termination::ReachedHorizon)
    throw NotApplicable(std::string("asymptotic fit needs a profile that reached its horizon, got ") +
                        to_string(bowl.status.kind));
  if (bowl.samples.empty() || bowl.samples.back().r < 100.0)
    throw NotApplicable("asymptotic fit needs a horizon of at least 100");

  const double alpha = invariants.alpha;
  AsymptoticFit fit;
  fit.window_hi = bowl.samples.back().r;
  fit.window_lo = 0.1 * fit.window_hi + 0.1 * (0.9 * fit.window_hi);
  fit.expected_exponent = alpha + 1.0;
  fit.expected_constant = 1.0 / ((alpha + 1.0) * invariants.boundary_value);

  std::vector<double> xs, ys;
  double log_c = 0.0;
  for (const BowlSample& s : bowl.samples) {
    if (s.r < fit.window_lo) continue;
    xs.push_back(std::log(s.r));
    ys.push_back(std::log(s.v));
    log_c += std::log(s.u) - (alpha + 1.0) * std::log(s.r);
  }
  if (xs.size() < 3) throw NotApplicable("too few samples in the asymptotic window");
  fit.exponent = 1.0 + numerics::fit_line(xs, ys).slope;
  fit.constant = std::exp(log_c / static_cast<double>(xs.size()));
  return fit;
}

ConvexityReport check_convexity(const BowlProfile& bowl) {
  ConvexityReport rep;
  rep.min_vprime = std::numeric_limits<double>::infinity();
  rep.min_v_over_r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bowl.samples.size(); ++i) {
    const BowlSample& s = bowl.samples[i];
    if (!(s.r > 0.0)) continue;
    const double ratio = s.v / s.r;
    rep.min_vprime = std::min(rep.min_vprime, s.v_prime);
    rep.min_v_over_r = std::min(rep.min_v_over_r, ratio);
    if (!rep.witness && !(s.v_prime > 0.0 && ratio > 0.0)) rep.witness = i;
  }
  rep.passed = !rep.witness && !bowl.samples.empty();
  return rep;
}

BarrierReport check_barriers(const ConstraintContext& ctx, const ProfileSolution& profile, double tol) {
  const SpeedInvariants& inv = ctx.invariants();
  const BarrierCurve sub(inv.gamma, inv.beta, BarrierKind::Subsolution);
  std::optional<BarrierCurve> super;
  if (inv.gamma_plus) super.emplace(*inv.gamma_plus, inv.beta, BarrierKind::Supersolution);

  BarrierReport rep;
  rep.min_sub_margin = std::numeric_limits<double>::infinity();
  if (super) rep.max_super_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < profile.samples.size(); ++i) {
    const ProfileSample& s = profile.samples[i];
    const double below = s.v / sub.w_of_r(s.r) - 1.0;
    rep.min_sub_margin = std::min(rep.min_sub_margin, below);
    if (!rep.sub_witness && below < -tol) rep.sub_witness = i;
    if (super) {
      const double above = s.v / super->w_of_r(s.r) - 1.0;
      rep.max_super_excess = std::max(*rep.max_super_excess, above);
      if (!rep.super_witness && above > tol) rep.super_witness = i;
    }
  }
  rep.sub_passed = !rep.sub_witness;
  rep.super_passed = !rep.super_witness;
  return rep;
}

double tip_curvature_deviation(const ConstraintContext& ctx, const ProfileSolution& profile) {
  const double r = 2.0 * profile.config.r_start;
  const double v = profile.interpolate(r);
  const auto [k1, krot] = curvatures(r, v, rhs(ctx, r, v));
  const double gamma = ctx.invariants().gamma;
  return std::max(std::abs(k1 - gamma), std::abs(krot - gamma));
}

}  // namespace bowlforge
