#include "bowlforge/gauss_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "bowlforge/numerics.hpp"

namespace bowlforge {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-13;
constexpr unsigned kQuadDepth = 10;

}  // namespace

GaussSeparable::GaussSeparable(int dim, double alpha) : dim_(dim), alpha_(alpha) {
  if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double beta = 0.5 - 0.5 / alpha;
  q_ = 1.0 + dim * beta;
  const double n = dim;
  if (2.0 * q_ > n) {
    // I(inf) = B(n/2, q - n/2) / 2
    const double total = 0.5 * boost::math::beta(0.5 * n, q_ - 0.5 * n);
    radius_ = std::pow(n * total, 1.0 / n);
  }
}

double GaussSeparable::integral(double v) const {
  if (!(v >= 0.0)) throw std::domain_error("integral needs v >= 0");
  const int n = dim_;
  const double q = q_;
  auto inner = [n, q](double t) { return std::pow(t, n - 1) * std::pow(1.0 + t * t, -q); };
  const double head_end = std::min(v, 1.0);
  double sum = gauss_kronrod<double, 31>::integrate(inner, 0.0, head_end, kQuadDepth, kQuadTol);
  if (v > 1.0) {
    // t = e^s keeps the integrand smooth on long ranges.
    auto outer = [n, q](double s) {
      const double t = std::exp(s);
      return std::pow(t, n) * std::pow(1.0 + t * t, -q);
    };
    sum += gauss_kronrod<double, 31>::integrate(outer, 0.0, std::log(v), kQuadDepth, kQuadTol);
  }
  return sum;
}

double GaussSeparable::v(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("v(r) needs r >= 0");
  if (radius_ && r >= *radius_)
    throw std::domain_error("r = " + std::to_string(r) + " is past the blow-up radius");
  if (r == 0.0) return 0.0;
  if (dim_ == 2) {
    // (1+v^2)^(1-q) = 1 + (1-q) r^2
    const double p = 1.0 - q_;
    const double v2 = std::abs(p) < 1e-14 ? std::expm1(r * r) : std::expm1(std::log1p(p * r * r) / p);
    return std::sqrt(v2);
  }
  const double target = std::pow(r, dim_) / dim_;
  auto fn = [&](double v) { return integral(v) / target - 1.0; };
  const auto br = numerics::bracket_increasing(fn, r);
  if (!br) throw std::domain_error("could not bracket v(r)");
  if (br->lo == br->hi) return br->lo;
  return numerics::brent_root(fn, *br);
}

}  // namespace bowlforge
