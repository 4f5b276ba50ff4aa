#include "bowlforge/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace bowlforge::numerics {

namespace {

struct AitkenStep {
  double value;
  bool diverging;
};

AitkenStep aitken(double f0, double f1, double f2, double scale) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double d0 = f1 - f0;
  const double d1 = f2 - f1;
  // Differences at round-off level: the sequence has already settled.
  if (std::abs(d1) <= 16.0 * eps * scale || d0 == 0.0) return {f2, false};
  const double rho = d1 / d0;
  if (rho >= 1.0) return {f2, true};
  if (rho <= 0.0) return {f2, false};
  return {f2 + d1 * rho / (1.0 - rho), false};
}

}  // namespace

LimitEstimate extrapolate_limit(std::span<const double> seq, double rtol) {
  LimitEstimate out;
  if (seq.empty()) return out;
  if (seq.size() < 3) {
    out.value = seq.back();
    return out;
  }
  double scale = 0.0;
  for (double x : seq) scale = std::max(scale, std::abs(x));

  const std::size_t n = seq.size();
  const AitkenStep last = aitken(seq[n - 3], seq[n - 2], seq[n - 1], scale);
  if (n == 3) {
    out.value = last.value;
    out.diverging = last.diverging;
    return out;
  }
  const AitkenStep prev = aitken(seq[n - 4], seq[n - 3], seq[n - 2], scale);
  if (last.diverging && prev.diverging) {
    out.value = std::numeric_limits<double>::infinity();
    out.diverging = true;
    return out;
  }
  out.value = last.value;
  out.stabilized = !last.diverging && !prev.diverging &&
                   std::abs(last.value - prev.value) <= rtol * scale;
  return out;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need two or more paired points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace bowlforge::numerics
