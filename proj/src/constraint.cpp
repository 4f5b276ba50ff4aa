#include "bowlforge/constraint.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "bowlforge/error.hpp"
#include "bowlforge/numerics.hpp"

namespace bowlforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// h(x, y) - 1 as a function of one slot. Evaluation failures at extreme
// arguments (overflow to inf, underflow to 0) are mapped to the sign the
// monotone function must have there.
template <typename Eval>
double shifted(Eval&& eval, double arg) {
  try {
    return eval(arg) - 1.0;
  } catch (const DomainError&) {
    return arg >= 1.0 ? kInf : -1.0;
  }
}

}  // namespace

ConstraintContext::ConstraintContext(SpeedFunction speed, double degeneracy_tol)
    : speed_(std::move(speed)), invariants_(compute_invariants(speed_, degeneracy_tol)) {
  const double alpha = invariants_.alpha;
  y_max_ = invariants_.gamma_plus.value_or(kInf);
  const double far = far_limit(speed_);
  y_min_ = std::isinf(far) ? 0.0 : 1.0 / std::pow(far, 1.0 / alpha);
}

double ConstraintContext::solve_g(double y, std::optional<double> hint) const {
  if (!in_domain(y))
    throw OutOfDomain("g(y, 1) is undefined at y = " + fmt(y) + "; domain is (" + fmt(y_min_) +
                      ", " + fmt(y_max_) + ")");
  auto fn = [&](double x) { return shifted([&](double a) { return speed_.restricted(a, y); }, x); };
  const double x0 = (hint && *hint > 0.0 && std::isfinite(*hint)) ? *hint : invariants_.gamma;
  const auto br = numerics::bracket_increasing(fn, x0);
  if (!br) throw BracketFailure("f(x, y e) never crosses 1 for y = " + fmt(y));
  if (br->lo == br->hi) return br->lo;
  return numerics::brent_root(fn, *br);
}

double ConstraintContext::solve_g1(double x) const {
  if (!(x > 0.0) || !std::isfinite(x))
    throw OutOfDomain("g1(x, 1) needs x > 0, got " + fmt(x));
  auto fn = [&](double y) { return shifted([&](double a) { return speed_.restricted(x, a); }, y); };
  const auto br = numerics::bracket_increasing(fn, invariants_.gamma);
  if (!br)
    throw OutOfDomain("x = " + fmt(x) + " is outside the projection of the level set f(x, y e) = 1");
  if (br->lo == br->hi) return br->lo;
  return numerics::brent_root(fn, *br);
}

double ConstraintContext::tail_limit() const {
  if (!invariants_.degenerate)
    throw NotApplicable(speed_.name() + " is nondegenerate: g(., 1) has bounded domain");
  double y = 10.0;
  while (y <= 2.0 * y_min_) y *= 10.0;
  std::vector<double> seq;
  std::optional<double> hint;
  for (int k = 0; k < 8; ++k, y *= 10.0) {
    const double g = solve_g(y, hint);
    if (!seq.empty() && g > seq.back() * (1.0 + 1e-12))
      throw NonConvergent(speed_.name() + ": g(y, 1) is not decreasing in y");
    seq.push_back(g);
    hint = g;
  }
  const auto est = numerics::extrapolate_limit(seq);
  if (est.stabilized) {
    const double limit = std::max(0.0, est.value);
    return limit <= 1e-9 * seq.front() ? 0.0 : limit;
  }
  bool decaying = true;
  for (std::size_t i = 1; i < seq.size(); ++i) decaying = decaying && seq[i] <= 0.95 * seq[i - 1];
  if (decaying) return 0.0;
  throw NonConvergent(speed_.name() + ": g(y, 1) neither stabilizes nor decays as y -> inf");
}

TailFit ConstraintContext::tail_decay_exponent(const TailWindow& window) const {
  if (!invariants_.degenerate)
    throw NotApplicable(speed_.name() + " is nondegenerate: no tail decay exponent");
  const double limit = tail_limit();
  if (limit > 0.0)
    throw NotApplicable(speed_.name() + ": g(y, 1) -> L = " + fmt(limit) + " > 0");

  double lo = window.y_lo, hi = window.y_hi;
  while (lo <= 2.0 * y_min_) {
    lo *= 10.0;
    hi *= 10.0;
  }
  const int n = std::max(window.points, 4);
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(xs.size());
  std::optional<double> hint;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const double y = lo * std::pow(hi / lo, t);
    const double g = solve_g(y, hint);
    hint = g;
    xs[i] = std::log(y);
    ys[i] = std::log(g);
  }
  const auto all = numerics::fit_line(xs, ys);
  const std::size_t half = xs.size() / 2;
  const auto first = numerics::fit_line(std::span(xs).first(half + 1), std::span(ys).first(half + 1));
  const auto second = numerics::fit_line(std::span(xs).subspan(half), std::span(ys).subspan(half));

  TailFit fit;
  fit.exponent = -all.slope;
  fit.log_constant = all.intercept;
  fit.rms_residual = all.rms_residual;
  fit.slope_drift = second.slope - first.slope;
  fit.y_lo = lo;
  fit.y_hi = hi;
  fit.good_fit = fit.rms_residual < window.rms_tol && std::abs(fit.slope_drift) < window.drift_tol;
  return fit;
}

}  // namespace bowlforge
