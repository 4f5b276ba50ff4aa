#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>

namespace bowlforge::numerics {

template <typename F>
concept ScalarFunction = requires(F f, double x) {
  { f(x) } -> std::convertible_to<double>;
};

/// A sign-change bracket [lo, hi] with F(lo) <= 0 <= F(hi).
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

/// Geometric bracketing for an increasing function on (0, inf).
///
/// Starting from `x0 > 0`, multiplies or divides by `factor` until `fn`
/// changes sign. Gives up once x leaves [x_floor, x_ceil].
template <ScalarFunction F>
std::optional<Bracket> bracket_increasing(F&& fn, double x0, double factor = 2.0,
                                          double x_floor = 1e-300,
                                          double x_ceil = 1e300) {
  double x = x0;
  double fx = fn(x);
  if (fx == 0.0) return Bracket{x, x, 0.0, 0.0};
  if (fx < 0.0) {
    for (;;) {
      const double next = x * factor;
      if (!(next <= x_ceil)) return std::nullopt;
      const double fn_next = fn(next);
      if (fn_next >= 0.0) return Bracket{x, next, fx, fn_next};
      x = next;
      fx = fn_next;
    }
  }
  for (;;) {
    const double next = x / factor;
    if (!(next >= x_floor)) return std::nullopt;
    const double fn_next = fn(next);
    if (fn_next <= 0.0) return Bracket{next, x, fn_next, fx};
    x = next;
    fx = fn_next;
  }
}

/// Brent's method (bisection + secant + inverse quadratic interpolation).
///
/// Requires a valid sign-change bracket. Never evaluates outside [lo, hi].
/// Stops when the bracket shrinks below `xtol + 4 eps |x|` or an exact zero
/// is hit.
template <ScalarFunction F>
double brent_root(F&& fn, const Bracket& br, double xtol = 0.0,
                  int max_iter = 200) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = br.lo, b = br.hi;
  double fa = br.f_lo, fb = br.f_hi;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = fn(b);
  }
  return b;
}

/// Result of extrapolating a sequence sampled along a geometric progression.
struct LimitEstimate {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool stabilized = false;  // successive extrapolants agree
  bool diverging = false;   // differences do not shrink: limit is infinite
};

/// Aitken delta-squared extrapolation of the tail of `seq`.
///
/// The sequence is assumed to come from a smooth function evaluated at a
/// geometric progression of abscissae, so that consecutive differences shrink
/// by a roughly constant ratio. Pure power-law approaches are extrapolated
/// exactly.
LimitEstimate extrapolate_limit(std::span<const double> seq, double rtol = 1e-6);

/// Least-squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace bowlforge::numerics
