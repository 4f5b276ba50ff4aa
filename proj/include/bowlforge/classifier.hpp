#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bowlforge/constraint.hpp"
#include "bowlforge/translator_ode.hpp"

namespace bowlforge {

struct Entire {
  std::optional<double> asymptotic_constant;  // present iff the speed is nondegenerate
};

struct Bounded {
  std::optional<double> R_low;  // filled by integration; R_low <= R_high
  std::optional<double> R_high;
};

struct Undetermined {
  std::string evidence;
};

using Verdict = std::variant<Entire, Bounded, Undetermined>;

enum class Rule {
  Nondegenerate,
  LowHomogeneity,       // alpha <= 1/2
  DegeneratePositiveL,  // g(y, 1) -> L > 0
  DegenerateFastDecay,  // g(y, 1) = O(y^-(2 alpha - 1)): entire
  DegenerateSlowDecay,  // slower decay: bounded
  BoundaryCase,         // exponent too close to 2 alpha - 1 with an unclean fit
};

const char* to_string(Rule rule);
/// "entire", "bounded" or "undetermined".
const char* verdict_name(const Verdict& verdict);

/// Everything the decision tree looks at.
struct DecisionInputs {
  bool degenerate = false;
  double alpha = 0.0;
  double boundary_value = 0.0;  // f(0, e)
  std::optional<double> tail_limit;
  std::optional<TailFit> tail_fit;
};

struct ClassifyOptions {
  double margin = 1e-3;          // tolerance on k - (2 alpha - 1)
  double boundary_band = 0.25;   // |k - (2 alpha - 1)| below which an unclean fit is not trusted
  double alpha_tol = 1e-9;
  bool bracket_radius = true;    // integrate to bracket R for bounded verdicts
  IntegrationConfig bracket_config = [] {
    IntegrationConfig c;
    c.r_max = 1e3;
    c.v_cap = 1e15;
    c.check_start_halving = false;
    return c;
  }();
  TailWindow tail_window;
};

struct Classification {
  Verdict verdict;
  Rule rule_fired = Rule::Nondegenerate;
  DecisionInputs inputs;
  double target_exponent = 0.0;  // 2 alpha - 1
};

/// The decision tree, as a pure function of the inputs. Bounded verdicts come
/// back without a radius.
Classification decide(const DecisionInputs& inputs, const ClassifyOptions& options = {});

/// Gathers the inputs from the constraint solver, runs `decide` and, for
/// bounded verdicts, brackets R by integration.
Classification classify(const ConstraintContext& ctx, const ClassifyOptions& options = {});
Classification classify(const SpeedFunction& speed, const ClassifyOptions& options = {});

struct ValidationReport {
  bool consistent = true;
  std::vector<std::string> mismatches;
  std::vector<std::string> notes;
  std::optional<double> fitted_constant;  // from the profile, nondegenerate entire only
};

/// Compares a verdict with a numerical profile of the same speed. Entire needs
/// a horizon of at least 1e3 with the slope ratio inside its barriers (or, for
/// exponential growth, v_cap >= 1e8 reached with no convergent blow-up tail);
/// Bounded needs a blow-up bracket below r_max that overlaps the verdict's.
ValidationReport cross_validate(const ConstraintContext& ctx, const ProfileSolution& profile,
                                const Classification& classification);

}  // namespace bowlforge
