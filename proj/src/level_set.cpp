#include "bowlforge/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bowlforge {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace

BarrierCurve::BarrierCurve(double m, double beta, BarrierKind kind) : m_(m), beta_(beta), kind_(kind) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("level value m must be positive, got " + std::to_string(m));
  if (!(beta < 0.5))
    throw std::invalid_argument("beta must be < 1/2 for r(w) to be invertible, got " +
                                std::to_string(beta));
}

double BarrierCurve::w_of_r(double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("w_of_r needs r > 0");
  // Solve F(t) = t - beta log(1 + e^{2t}) - log(m r) = 0 for t = log w.
  // F' = 1 - 2 beta sigma(2t) lies between 1 and 1 - 2 beta, both positive,
  // so |t* - t0| <= |F(t0)| / min(1, 1 - 2 beta) brackets the root.
  const double c = std::log(m_) + std::log(r);
  auto F = [&](double t) { return t - beta_ * softplus(2.0 * t) - c; };
  auto dF = [&](double t) { return 1.0 - 2.0 * beta_ * logistic(2.0 * t); };
  const double slope_lo = std::min(1.0, 1.0 - 2.0 * beta_);

  double t = c > 0.0 ? alpha() * c : c;  // w ~ (m r)^alpha for large m r, w ~ m r for small
  double f = F(t);
  if (f == 0.0) return std::exp(t);
  double lo = t - std::abs(f) / slope_lo;
  double hi = t + std::abs(f) / slope_lo;
  for (int iter = 0; iter < 100; ++iter) {
    if (f > 0.0) hi = std::min(hi, t); else lo = std::max(lo, t);
    double next = t - f / dF(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = next - t;
    t = next;
    f = F(t);
    if (f == 0.0 || std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
  }
  return std::exp(t);
}

double BarrierCurve::dw_dr(double w) const {
  const double w2 = w * w;
  return m_ * std::pow(1.0 + w2, 1.0 + beta_) / (1.0 + (1.0 - 2.0 * beta_) * w2);
}

double BarrierCurve::r_of_w(double w) const { return w / (m_ * std::pow(1.0 + w * w, beta_)); }

std::pair<double, double> asymptotic_exponents(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return {alpha, alpha - 1.0};
}

}  // namespace bowlforge
