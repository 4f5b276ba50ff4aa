#include <charconv>
#include <cmath>
#include <string_view>

#include "bowlforge/error.hpp"
#include "bowlforge/speed.hpp"
#include "bowlforge/speed_expr.hpp"

namespace bowlforge {

namespace {

double parse_number(std::string_view text, const std::string& spec) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    throw SpecError("malformed number '" + std::string(text) + "' in speed spec '" + spec + "'");
  return value;
}

}  // namespace

SpeedFunction make_speed(const std::string& spec, int dim) {
  if (dim < 2) throw SpecError("--dim must be at least 2");
  if (spec == "mean") return speeds::mean_curvature(dim);
  if (spec == "harmonic-mean") return speeds::harmonic_mean(dim);
  if (spec == "scalar") return speeds::scalar_curvature(dim);

  const std::string_view view(spec);
  if (view.starts_with("expr:")) return to_speed_function(parse_speed(spec.substr(5), dim));
  if (view.starts_with("gauss:")) {
    const double alpha = parse_number(view.substr(6), spec);
    if (!(alpha > 0.0)) throw AdmissibilityError("gauss:<alpha> needs alpha > 0");
    return speeds::gauss_power(dim, alpha);
  }
  if (view.starts_with("power-mean:")) {
    const auto rest = view.substr(11);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw SpecError("expected power-mean:<p>:<alpha>, got '" + spec + "'");
    const double p = parse_number(rest.substr(0, colon), spec);
    const double alpha = parse_number(rest.substr(colon + 1), spec);
    if (!(alpha > 0.0)) throw AdmissibilityError("power-mean needs alpha > 0");
    return speeds::power_mean(dim, p, alpha);
  }
  throw SpecError("unknown speed '" + spec +
                  "' (expected mean, harmonic-mean, scalar, gauss:<alpha>, "
                  "power-mean:<p>:<alpha> or expr:<source>)");
}

}  // namespace bowlforge
