#include "bowlforge/translator_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bowlforge/error.hpp"
#include "bowlforge/level_set.hpp"
#include "bowlforge/numerics.hpp"

namespace bowlforge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Dormand-Prince 5(4), first-same-as-last.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Trial {
  double y1 = 0.0;
  double k7 = 0.0;
  double err = 0.0;  // scaled, accept when <= 1
  std::array<double, 5> dense{};
};

// One DOPRI step from (t, y) with slope k1. Returns false when a stage left
// the domain of the right-hand side.
template <typename F>
bool dopri_step(F&& f, double t, double y, double k1, double h, double rtol, double atol, Trial& out) {
  try {
    const double k2 = f(t + c2 * h, y + h * a21 * k1);
    const double k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const double k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const double k7 = f(t + h, y1);
    const double est = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = atol + rtol * std::max(std::abs(y), std::abs(y1));
    out.y1 = y1;
    out.k7 = k7;
    out.err = std::abs(est) / sc;
    const double ydiff = y1 - y;
    const double bspl = h * k1 - ydiff;
    out.dense = {y, ydiff, bspl, ydiff - h * k7 - bspl,
                 h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7)};
    return std::isfinite(y1) && std::isfinite(k7) && std::isfinite(out.err);
  } catch (const OutOfDomain&) {
  } catch (const DomainError&) {
  } catch (const BracketFailure&) {
  }
  return false;
}

double dense_eval(const std::array<double, 5>& c, double theta) {
  const double theta1 = 1.0 - theta;
  return c[0] + theta * (c[1] + theta1 * (c[2] + theta * (c[3] + theta1 * c[4])));
}

// PI step-size controller.
struct Controller {
  double err_prev = 1e-4;

  double accepted(double h, double err) {
    err = std::max(err, 1e-10);
    const double fac = 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
    err_prev = err;
    return h * std::clamp(fac, 0.2, 5.0);
  }
  static double rejected(double h, double err) {
    if (!std::isfinite(err)) return 0.25 * h;
    return h * std::max(0.2, 0.9 * std::pow(err, -0.2));
  }
};

// log(1 + v^2) without overflow.
double log1p_sq(double v) {
  return v < 1e100 ? std::log1p(v * v) : 2.0 * std::log(v) + std::log1p(1.0 / (v * v));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Decay rate of G(s) = dr/ds fitted over the last `span` units of s.
double tail_rate(const std::vector<double>& s, const std::vector<double>& log_g, double span = 2.0) {
  const std::size_t n = s.size();
  if (n < 3) return 0.0;
  std::size_t first = n - 3;
  while (first > 0 && s[first - 1] >= s.back() - span) --first;
  const auto fit = numerics::fit_line(std::span(s).subspan(first), std::span(log_g).subspan(first));
  return -fit.slope;
}

class Integrator {
 public:
  Integrator(const ConstraintContext& ctx, const IntegrationConfig& cfg)
      : ctx_(ctx), cfg_(cfg), beta_(ctx.invariants().beta) {}

  ProfileSolution run();

 private:
  double rhs_r(double r, double v) {
    if (!(r > 0.0) || !(v > 0.0)) throw OutOfDomain("r and v must stay positive");
    const double w = 1.0 + v * v;
    const double g = ctx_.solve_g(v / (r * std::pow(w, beta_)), g_hint_);
    g_hint_ = g;
    return std::pow(w, 1.0 + beta_) * g;
  }
  // dr/ds with s = log v.
  double rhs_s(double s, double r) {
    if (!(r > 0.0)) throw OutOfDomain("radius left (0, inf) in the log-slope phase");
    const double L = log1p_sq(std::exp(s));
    const double y = std::exp(s - beta_ * L - std::log(r));
    const double g = ctx_.solve_g(y, g_hint_);
    g_hint_ = g;
    return std::exp(s - (1.0 + beta_) * L - std::log(g));
  }

  void push(double r, double v, double vp, DenseSegment seg) {
    if (!sol_.samples.empty()) {
      if (!(r > sol_.samples.back().r)) return;
      sol_.dense.push_back(seg);
    }
    sol_.samples.push_back({r, v, vp});
  }

  bool phase_r();
  void phase_log_v();

  const ConstraintContext& ctx_;
  IntegrationConfig cfg_;
  double beta_;
  std::optional<double> g_hint_;
  ProfileSolution sol_;
  Controller ctl_;
};

// Returns true when the log-slope phase should take over.
bool Integrator::phase_r() {
  const double v_switch = std::min(cfg_.v_switch, cfg_.v_cap / 10.0);
  double r = cfg_.r_start;
  const BarrierCurve start_curve(ctx_.invariants().gamma, beta_, BarrierKind::Subsolution);
  double v = start_curve.w_of_r(r);
  double k1;
  try {
    k1 = rhs_r(r, v);
  } catch (const Error& e) {
    throw StartupFailure("right-hand side undefined at the start point r = " + fmt(r) + ": " + e.what());
  }
  if (!std::isfinite(k1) || !(k1 > 0.0))
    throw StartupFailure("right-hand side is not finite and positive at r = " + fmt(r));
  push(r, v, k1, {});

  double h = 0.01 * r;
  double k_prev = k1;
  Trial trial;
  auto eval = [&](double t, double y) { return rhs_r(t, y); };
  for (;;) {
    if (r >= cfg_.r_max) {
      sol_.status = {Termination::ReachedHorizon, 0.0, 0.0, r, v, 0.0, ""};
      return false;
    }
    if (v > v_switch) return true;
    if (sol_.accepted_steps + sol_.rejected_steps >= cfg_.max_steps) {
      sol_.status = {Termination::LeftDomain, 0.0, 0.0, r, v, 0.0, "step budget exhausted"};
      return false;
    }
    bool last = false;
    if (r + h >= cfg_.r_max * (1.0 - 1e-14)) {
      h = cfg_.r_max - r;
      last = true;
    }
    if (h < cfg_.min_step * std::max(1.0, r) && !last) {
      if (k1 > k_prev) return true;
      sol_.status = {Termination::LeftDomain, 0.0, 0.0, r, v, 0.0,
                     "step size collapsed at r = " + fmt(r) + " while v' was not growing"};
      return false;
    }
    if (!dopri_step(eval, r, v, k1, h, cfg_.rel_tol, cfg_.abs_tol, trial)) {
      ++sol_.rejected_steps;
      h *= 0.25;
      continue;
    }
    if (trial.err > 1.0) {
      ++sol_.rejected_steps;
      h = Controller::rejected(h, trial.err);
      continue;
    }
    ++sol_.accepted_steps;
    const double r1 = last ? cfg_.r_max : r + h;
    DenseSegment seg;
    seg.polynomial = true;
    seg.coeff = trial.dense;
    push(r1, trial.y1, trial.k7, seg);
    k_prev = k1;
    r = r1;
    v = trial.y1;
    k1 = trial.k7;
    h = ctl_.accepted(h, trial.err);
  }
}

void Integrator::phase_log_v() {
  double r = sol_.samples.back().r;
  double s = std::log(sol_.samples.back().v);
  auto eval = [&](double t, double y) { return rhs_s(t, y); };
  double k1;
  try {
    k1 = rhs_s(s, r);
  } catch (const Error& e) {
    sol_.status = {Termination::LeftDomain, 0.0, 0.0, r, std::exp(s), 0.0,
                   std::string("log-slope phase could not start: ") + e.what()};
    return;
  }
  const double s_cap = std::log(cfg_.v_cap);
  const double s_ceiling = std::max(s_cap, std::log(cfg_.v_ceiling));
  std::vector<double> hist_s{s}, hist_g{std::log(k1)};
  bool blowing_up = false;
  double rate = 0.0;
  double h = 0.05;
  Controller ctl;
  Trial trial;

  auto finish_blowup = [&] {
    rate = std::max(tail_rate(hist_s, hist_g), rate > 0.0 ? 0.5 * rate : 0.0);
    const double tail = 2.0 * k1 / rate;
    const double margin = 100.0 * cfg_.rel_tol * r + 10.0 * cfg_.abs_tol;
    sol_.status = {Termination::BlewUp, r - margin, r + tail + margin, r, std::exp(s), rate, ""};
  };

  for (;;) {
    const double s_stop = blowing_up ? s_ceiling : s_cap;
    if (s >= s_stop * (1.0 - 1e-15)) {
      if (!blowing_up) {
        rate = tail_rate(hist_s, hist_g);
        if (!(rate >= cfg_.tail_rate_min)) {
          sol_.status = {Termination::CapReached, 0.0, 0.0, r, std::exp(s), rate,
                         "v exceeded v_cap without a convergent blow-up tail"};
          return;
        }
        blowing_up = true;
      } else {
        finish_blowup();
        return;
      }
    }
    if (blowing_up) {
      const double local = tail_rate(hist_s, hist_g);
      if (local >= cfg_.tail_rate_min && 2.0 * k1 / local < cfg_.tail_target * r) {
        rate = local;
        finish_blowup();
        return;
      }
    }
    if (sol_.accepted_steps + sol_.rejected_steps >= cfg_.max_steps) {
      sol_.status = {Termination::LeftDomain, 0.0, 0.0, r, std::exp(s), 0.0, "step budget exhausted"};
      return;
    }
    h = std::min({h, 0.5, s_stop - s});
    if (h < 1e-12) {
      sol_.status = {Termination::LeftDomain, 0.0, 0.0, r, std::exp(s), 0.0,
                     "step size collapsed in the log-slope phase at r = " + fmt(r)};
      return;
    }
    if (!dopri_step(eval, s, r, k1, h, cfg_.rel_tol, cfg_.abs_tol, trial)) {
      ++sol_.rejected_steps;
      h *= 0.25;
      continue;
    }
    if (trial.err > 1.0) {
      ++sol_.rejected_steps;
      h = Controller::rejected(h, trial.err);
      continue;
    }
    ++sol_.accepted_steps;
    if (trial.y1 >= cfg_.r_max) {
      // Locate r(s*) = r_max on the continuous extension.
      auto fn = [&](double theta) { return dense_eval(trial.dense, theta) - cfg_.r_max; };
      const double f0 = fn(0.0), f1 = fn(1.0);
      const double theta =
          f0 >= 0.0 ? 0.0 : numerics::brent_root(fn, numerics::Bracket{0.0, 1.0, f0, f1});
      const double s_star = s + theta * h;
      const double v_star = std::exp(s_star);
      double vp = kNaN;
      try {
        vp = rhs(ctx_, cfg_.r_max, v_star);
      } catch (const Error&) {
        vp = v_star / trial.k7;
      }
      push(cfg_.r_max, v_star, vp, {});
      sol_.status = {Termination::ReachedHorizon, 0.0, 0.0, cfg_.r_max, v_star, 0.0, ""};
      return;
    }
    s += h;
    r = trial.y1;
    k1 = trial.k7;
    const double v = std::exp(s);
    push(r, v, v / k1, {});
    hist_s.push_back(s);
    hist_g.push_back(std::log(k1));
    h = ctl.accepted(h, trial.err);
  }
}

ProfileSolution Integrator::run() {
  sol_.speed_id = ctx_.speed().name();
  sol_.tip_slope = ctx_.invariants().gamma;
  sol_.beta = beta_;
  sol_.config = cfg_;
  sol_.start_sensitivity = kNaN;
  if (phase_r()) phase_log_v();
  return std::move(sol_);
}

double hermite(const ProfileSample& a, const ProfileSample& b, double r) {
  const double h = b.r - a.r;
  const double t = (r - a.r) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a.v + (t3 - 2 * t2 + t) * h * a.v_prime + (-2 * t3 + 3 * t2) * b.v +
         (t3 - t2) * h * b.v_prime;
}

}  // namespace

void IntegrationConfig::validate() const {
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!positive(r_start) || !positive(r_max) || !(r_start < r_max))
    throw std::invalid_argument("need 0 < r_start < r_max, got r_start = " + fmt(r_start) +
                                ", r_max = " + fmt(r_max));
  if (!positive(v_cap)) throw std::invalid_argument("v_cap must be positive");
  if (!positive(rel_tol) || !positive(abs_tol) || !positive(min_step))
    throw std::invalid_argument("tolerances must be positive");
  if (rel_tol < 4.0 * std::numeric_limits<double>::epsilon())
    throw std::invalid_argument("rel_tol below 4 machine epsilons cannot be met, got " + fmt(rel_tol));
  if (!positive(v_switch) || !positive(tail_rate_min) || !positive(tail_target) || !positive(v_ceiling))
    throw std::invalid_argument("tail controls must be positive");
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ReachedHorizon: return "reached_horizon";
    case Termination::BlewUp: return "blew_up";
    case Termination::LeftDomain: return "left_domain";
    case Termination::CapReached: return "cap_reached";
  }
  return "unknown";
}

double ProfileSolution::interpolate(double r) const {
  if (samples.empty()) throw std::out_of_range("empty profile");
  if (r < samples.front().r || r > samples.back().r)
    throw std::out_of_range("r = " + fmt(r) + " outside the sampled range [" + fmt(samples.front().r) +
                            ", " + fmt(samples.back().r) + "]");
  auto it = std::upper_bound(samples.begin(), samples.end(), r,
                             [](double x, const ProfileSample& s) { return x < s.r; });
  if (it == samples.end()) return samples.back().v;
  const std::size_t i = static_cast<std::size_t>(it - samples.begin()) - 1;
  const ProfileSample& a = samples[i];
  const ProfileSample& b = samples[i + 1];
  if (i < dense.size() && dense[i].polynomial)
    return dense_eval(dense[i].coeff, (r - a.r) / (b.r - a.r));
  return hermite(a, b, r);
}

double rhs(const ConstraintContext& ctx, double r, double v, std::optional<double> g_hint) {
  if (!(r > 0.0) || !(v > 0.0))
    throw OutOfDomain("translator ODE needs r > 0 and v > 0, got r = " + fmt(r) + ", v = " + fmt(v));
  const double beta = ctx.invariants().beta;
  const double w = 1.0 + v * v;
  const double y = v / (r * std::pow(w, beta));
  return std::pow(w, 1.0 + beta) * ctx.solve_g(y, g_hint);
}

ProfileSolution integrate(const ConstraintContext& ctx, const IntegrationConfig& config) {
  config.validate();
  ProfileSolution sol = Integrator(ctx, config).run();
  if (config.check_start_halving) {
    IntegrationConfig half = config;
    half.r_start *= 0.5;
    half.check_start_halving = false;
    try {
      const ProfileSolution other = Integrator(ctx, half).run();
      const double rc = 0.5 * std::min(sol.r_end(), other.r_end());
      if (rc > config.r_start) {
        const double a = sol.interpolate(rc), b = other.interpolate(rc);
        sol.start_sensitivity = std::abs(a - b) / std::abs(a);
      }
    } catch (const Error&) {
    }
  }
  return sol;
}

ProfileSolution integrate(const SpeedFunction& speed, const IntegrationConfig& config) {
  const ConstraintContext ctx(speed);
  return integrate(ctx, config);
}

ConvergenceReport start_convergence(const ConstraintContext& ctx, const std::vector<double>& starts,
                                    double r_ref, IntegrationConfig config) {
  if (starts.empty()) throw std::invalid_argument("start_convergence needs at least one start");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (!(starts[i] > 0.0) || !(starts[i] < r_ref))
      throw std::invalid_argument("every start must lie in (0, r_ref)");
    if (i > 0 && starts[i] > starts[i - 1])
      throw std::invalid_argument("starts must be non-increasing");
  }
  config.r_max = r_ref;
  config.check_start_halving = false;

  std::vector<ProfileSolution> runs;
  runs.reserve(starts.size());
  double r_hi = r_ref;
  for (double s : starts) {
    config.r_start = s;
    runs.push_back(integrate(ctx, config));
    r_hi = std::min(r_hi, runs.back().r_end());
  }

  ConvergenceReport rep;
  rep.starts = starts;
  const double r_lo = starts.front();
  constexpr int kGrid = 400;
  if (r_hi > r_lo) {
    for (int i = 0; i < kGrid; ++i)
      rep.grid.push_back(r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (kGrid - 1)));
    rep.grid.back() = r_hi;
  }
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    double sup = 0.0;
    for (double r : rep.grid) sup = std::max(sup, std::abs(runs[k].interpolate(r) - runs[k + 1].interpolate(r)));
    rep.sup_diffs.push_back(sup);
  }
  rep.linear_shrink = true;
  for (std::size_t k = 0; k + 1 < rep.sup_diffs.size(); ++k) {
    const double num = rep.sup_diffs[k], den = rep.sup_diffs[k + 1];
    const double factor = den > 0.0 ? num / den : (num > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    rep.shrink_factors.push_back(factor);
    const double ratio = starts[k] / starts[k + 1];
    if (!(factor >= 0.5 * ratio)) rep.linear_shrink = false;
  }
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < rep.sup_diffs.size(); ++k) {
    if (rep.sup_diffs[k] > 0.0 && starts[k] > starts[k + 1]) {
      xs.push_back(std::log(starts[k]));
      ys.push_back(std::log(rep.sup_diffs[k]));
    }
  }
  rep.fitted_rate = xs.size() >= 2 ? numerics::fit_line(xs, ys).slope : kNaN;
  return rep;
}

TipSlope slope_at_origin(const ConstraintContext& ctx, double r_start) {
  TipSlope tip;
  tip.gamma = ctx.invariants().gamma;
  IntegrationConfig cfg;
  cfg.r_start = r_start;
  cfg.r_max = 8.0 * r_start;
  cfg.check_start_halving = false;
  const ProfileSolution sol = integrate(ctx, cfg);
  for (int i = 0; i < 3; ++i) {
    const double r = r_start * static_cast<double>(1 << i);
    tip.probe_radii[i] = r;
    tip.probe_ratios[i] = sol.interpolate(r) / r;
    tip.max_rel_deviation = std::max(tip.max_rel_deviation, std::abs(tip.probe_ratios[i] / tip.gamma - 1.0));
  }
  return tip;
}

}  // namespace bowlforge
