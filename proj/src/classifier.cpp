#include "bowlforge/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <sstream>

#include "bowlforge/error.hpp"
#include "bowlforge/profile.hpp"

namespace bowlforge {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string fit_evidence(const TailFit& fit, double target) {
  std::ostringstream os;
  os.precision(6);
  os << "tail exponent " << fit.exponent << " vs 2*alpha-1 = " << target << ", rms residual "
     << fit.rms_residual << ", slope drift " << fit.slope_drift << " over y in [" << fit.y_lo << ", "
     << fit.y_hi << "]";
  return os.str();
}

// v / (r (1 + v^2)^beta) without overflow.
double slope_ratio(double r, double v, double beta) {
  const double L = v < 1e100 ? std::log1p(v * v) : 2.0 * std::log(v) + std::log1p(1.0 / (v * v));
  return std::exp(std::log(v) - beta * L - std::log(r));
}

}  // namespace

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::Nondegenerate: return "nondegenerate";
    case Rule::LowHomogeneity: return "low_homogeneity";
    case Rule::DegeneratePositiveL: return "degenerate_positive_l";
    case Rule::DegenerateFastDecay: return "degenerate_fast_decay";
    case Rule::DegenerateSlowDecay: return "degenerate_slow_decay";
    case Rule::BoundaryCase: return "boundary_case";
  }
  return "unknown";
}

const char* verdict_name(const Verdict& verdict) {
  if (std::holds_alternative<Entire>(verdict)) return "entire";
  if (std::holds_alternative<Bounded>(verdict)) return "bounded";
  return "undetermined";
}

Classification decide(const DecisionInputs& in, const ClassifyOptions& opt) {
  Classification c;
  c.inputs = in;
  c.target_exponent = 2.0 * in.alpha - 1.0;
  if (!in.degenerate) {
    c.verdict = Entire{1.0 / ((in.alpha + 1.0) * in.boundary_value)};
    c.rule_fired = Rule::Nondegenerate;
    return c;
  }
  if (in.alpha <= 0.5 + opt.alpha_tol) {
    c.verdict = Entire{};
    c.rule_fired = Rule::LowHomogeneity;
    return c;
  }
  if (!in.tail_limit) throw std::invalid_argument("degenerate speed with alpha > 1/2 needs the tail limit L");
  if (*in.tail_limit > 0.0) {
    c.verdict = Bounded{};
    c.rule_fired = Rule::DegeneratePositiveL;
    return c;
  }
  if (!in.tail_fit) throw std::invalid_argument("L = 0 needs the tail decay fit");
  const TailFit& fit = *in.tail_fit;
  const double gap = fit.exponent - c.target_exponent;
  if (!fit.good_fit && std::abs(gap) < opt.boundary_band) {
    c.verdict = Undetermined{fit_evidence(fit, c.target_exponent)};
    c.rule_fired = Rule::BoundaryCase;
  } else if (gap >= -opt.margin) {
    c.verdict = Entire{};
    c.rule_fired = Rule::DegenerateFastDecay;
  } else {
    c.verdict = Bounded{};
    c.rule_fired = Rule::DegenerateSlowDecay;
  }
  return c;
}

Classification classify(const ConstraintContext& ctx, const ClassifyOptions& opt) {
  const SpeedInvariants& inv = ctx.invariants();
  DecisionInputs in;
  in.degenerate = inv.degenerate;
  in.alpha = inv.alpha;
  in.boundary_value = inv.boundary_value;
  if (inv.degenerate && inv.alpha > 0.5 + opt.alpha_tol) {
    in.tail_limit = ctx.tail_limit();
    if (*in.tail_limit == 0.0) in.tail_fit = ctx.tail_decay_exponent(opt.tail_window);
  }
  Classification c = decide(in, opt);
  if (auto* b = std::get_if<Bounded>(&c.verdict); b != nullptr && opt.bracket_radius) {
    const ProfileSolution sol = integrate(ctx, opt.bracket_config);
    if (sol.status.kind == Termination::BlewUp) {
      b->R_low = sol.status.r_low;
      b->R_high = sol.status.r_high;
    }
  }
  return c;
}

Classification classify(const SpeedFunction& speed, const ClassifyOptions& options) {
  const ConstraintContext ctx(speed);
  return classify(ctx, options);
}

ValidationReport cross_validate(const ConstraintContext& ctx, const ProfileSolution& profile,
                                const Classification& classification) {
  ValidationReport rep;
  auto mismatch = [&](std::string m) {
    rep.consistent = false;
    rep.mismatches.push_back(std::move(m));
  };
  const SpeedInvariants& inv = ctx.invariants();
  const ProfileStatus& st = profile.status;
  const IntegrationConfig& cfg = profile.config;

  if (std::holds_alternative<Entire>(classification.verdict)) {
    if (st.kind == Termination::ReachedHorizon) {
      if (profile.r_end() < 1e3)
        mismatch("entire verdict but the profile horizon " + fmt(profile.r_end()) + " is below 1e3");
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (const ProfileSample& s : profile.samples) {
        const double y = slope_ratio(s.r, s.v, inv.beta);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
      constexpr double tol = 1e-9;
      if (!std::isfinite(hi)) mismatch("slope ratio is unbounded along an entire profile");
      if (lo < inv.gamma * (1.0 - tol))
        mismatch("slope ratio " + fmt(lo) + " fell below gamma = " + fmt(inv.gamma));
      if (inv.gamma_plus && hi > *inv.gamma_plus * (1.0 + tol))
        mismatch("slope ratio " + fmt(hi) + " exceeded gamma_plus = " + fmt(*inv.gamma_plus));
      if (!inv.degenerate && profile.r_end() >= 100.0) {
        try {
          const AsymptoticFit fit = fit_asymptotics(recover_u(profile), inv);
          rep.fitted_constant = fit.constant;
          const auto* e = std::get_if<Entire>(&classification.verdict);
          if (e->asymptotic_constant &&
              std::abs(fit.constant / *e->asymptotic_constant - 1.0) > 0.05)
            mismatch("fitted constant " + fmt(fit.constant) + " differs from " +
                     fmt(*e->asymptotic_constant) + " by more than 5%");
        } catch (const NotApplicable& e) {
          rep.notes.push_back(e.what());
        }
      }
    } else if (st.kind == Termination::CapReached && cfg.v_cap >= 1e8 &&
               st.tail_rate < cfg.tail_rate_min) {
      rep.notes.push_back("v reached v_cap = " + fmt(cfg.v_cap) + " at r = " + fmt(st.r) +
                          " with tail decay rate " + fmt(st.tail_rate) +
                          ": super-polynomial growth without a convergent blow-up tail");
    } else {
      mismatch(std::string("entire verdict but the profile ended with ") + to_string(st.kind) +
               (st.kind == Termination::CapReached ? " at v_cap = " + fmt(cfg.v_cap) : "") +
               (st.reason.empty() ? "" : " (" + st.reason + ")"));
    }
  } else if (const auto* b = std::get_if<Bounded>(&classification.verdict)) {
    if (st.kind != Termination::BlewUp) {
      mismatch(std::string("bounded verdict but the profile ended with ") + to_string(st.kind) +
               (st.reason.empty() ? "" : " (" + st.reason + ")"));
    } else {
      if (!(st.r_high <= cfg.r_max))
        mismatch("blow-up bracket upper end " + fmt(st.r_high) + " exceeds r_max = " + fmt(cfg.r_max));
      if (b->R_low && b->R_high && (st.r_high < *b->R_low || st.r_low > *b->R_high))
        mismatch("blow-up bracket [" + fmt(st.r_low) + ", " + fmt(st.r_high) +
                 "] does not overlap the verdict's [" + fmt(*b->R_low) + ", " + fmt(*b->R_high) + "]");
    }
  } else {
    rep.notes.push_back("undetermined verdict: profile ended with " + std::string(to_string(st.kind)));
  }
  return rep;
}

}  // namespace bowlforge
