#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "bowlforge/classifier.hpp"
#include "bowlforge/profile.hpp"
#include "bowlforge/speed.hpp"
#include "bowlforge/translator_ode.hpp"

namespace bowlforge {

inline constexpr const char* kSchema = "bowlforge/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  std::string speed;
  int dim = 0;
  std::map<std::string, std::string> overrides;  // flag name -> value as given
  std::vector<std::string> outputs;
  std::string version = kToolVersion;
  double wall_time_s = 0.0;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpeedInvariants& inv);
nlohmann::json to_json(const IntegrationConfig& cfg);
nlohmann::json to_json(const ProfileStatus& status);
nlohmann::json to_json(const TailFit& fit);
nlohmann::json to_json(const AsymptoticFit& fit);
nlohmann::json to_json(const ValidationReport& rep);

/// Verdict object: {"verdict", "rule", "rule_fired", "C", "R", "evidence", "tail"}.
/// "rule" groups branches that reach a verdict for the same reason; "rule_fired" is the exact branch.
nlohmann::json to_json(const Classification& c);
const char* rule_family(Rule rule);

/// r, v, vprime, u, kappa1, kappa_rot, residual in %.16e.
std::string profile_csv(const BowlProfile& bowl);

}  // namespace bowlforge
