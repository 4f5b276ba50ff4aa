#include "bowlforge/report.hpp"

#include <cmath>
#include <cstdio>

namespace bowlforge {

using nlohmann::json;

namespace {

// JSON has no NaN or infinity.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const RunManifest& m) {
  return {{"command", m.command}, {"speed", m.speed},     {"dim", m.dim},
          {"overrides", m.overrides}, {"outputs", m.outputs}, {"version", m.version},
          {"wall_time_s", m.wall_time_s}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.speed = j.at("speed").get<std::string>();
  m.dim = j.at("dim").get<int>();
  m.overrides = j.at("overrides").get<std::map<std::string, std::string>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.version = j.at("version").get<std::string>();
  m.wall_time_s = j.at("wall_time_s").get<double>();
  return m;
}

json to_json(const SpeedInvariants& inv) {
  return {{"alpha", inv.alpha},
          {"beta", inv.beta},
          {"gamma", inv.gamma},
          {"boundary_value", inv.boundary_value},
          {"degenerate", inv.degenerate},
          {"gamma_plus", inv.gamma_plus ? json(*inv.gamma_plus) : json(nullptr)}};
}

json to_json(const IntegrationConfig& c) {
  return {{"r_start", c.r_start}, {"r_max", c.r_max},     {"v_cap", c.v_cap},
          {"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol}, {"min_step", c.min_step}};
}

json to_json(const ProfileStatus& s) {
  json j = {{"kind", to_string(s.kind)}, {"r_end", number(s.r)}, {"v_end", number(s.v)}};
  if (s.kind == Termination::BlewUp) j["R"] = {s.r_low, s.r_high};
  if (s.kind == Termination::BlewUp || s.kind == Termination::CapReached) j["tail_rate"] = number(s.tail_rate);
  if (!s.reason.empty()) j["reason"] = s.reason;
  return j;
}

json to_json(const TailFit& f) {
  return {{"exponent", f.exponent},         {"log_constant", f.log_constant},
          {"rms_residual", f.rms_residual}, {"slope_drift", f.slope_drift},
          {"y_window", {f.y_lo, f.y_hi}},   {"good_fit", f.good_fit}};
}

json to_json(const AsymptoticFit& f) {
  return {{"exponent", f.exponent},
          {"constant", f.constant},
          {"window", {f.window_lo, f.window_hi}},
          {"expected_exponent", f.expected_exponent},
          {"expected_constant", number(f.expected_constant)}};
}

json to_json(const ValidationReport& r) {
  json j = {{"consistent", r.consistent}, {"mismatches", r.mismatches}, {"notes", r.notes}};
  if (r.fitted_constant) j["fitted_constant"] = *r.fitted_constant;
  return j;
}

const char* rule_family(Rule rule) {
  switch (rule) {
    case Rule::Nondegenerate: return "nondegenerate";
    case Rule::LowHomogeneity:
    case Rule::DegenerateFastDecay: return "low_homogeneity_or_decay";
    case Rule::DegeneratePositiveL: return "degenerate_positive_limit";
    case Rule::DegenerateSlowDecay: return "degenerate_slow_decay";
    case Rule::BoundaryCase: return "boundary_case";
  }
  return "unknown";
}

json to_json(const Classification& c) {
  json j = {{"verdict", verdict_name(c.verdict)},
            {"rule", rule_family(c.rule_fired)},
            {"rule_fired", to_string(c.rule_fired)},
            {"C", nullptr},
            {"R", nullptr},
            {"evidence", nullptr}};
  if (const auto* e = std::get_if<Entire>(&c.verdict); e && e->asymptotic_constant)
    j["C"] = *e->asymptotic_constant;
  if (const auto* b = std::get_if<Bounded>(&c.verdict); b && b->R_low && b->R_high)
    j["R"] = {*b->R_low, *b->R_high};
  if (const auto* u = std::get_if<Undetermined>(&c.verdict)) j["evidence"] = u->evidence;
  json tail = {{"target_exponent", c.target_exponent}};
  if (c.inputs.tail_limit) tail["L"] = *c.inputs.tail_limit;
  if (c.inputs.tail_fit) tail["fit"] = to_json(*c.inputs.tail_fit);
  j["tail"] = tail;
  return j;
}

std::string profile_csv(const BowlProfile& bowl) {
  std::string out = "r,v,vprime,u,kappa1,kappa_rot,residual\n";
  char line[256];
  for (const BowlSample& s : bowl.samples) {
    std::snprintf(line, sizeof line, "%.16e,%.16e,%.16e,%.16e,%.16e,%.16e,%.16e\n", s.r, s.v, s.v_prime,
                  s.u, s.kappa1, s.kappa_rot, s.residual);
    out += line;
  }
  return out;
}

}  // namespace bowlforge
