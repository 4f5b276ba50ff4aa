// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bowlforge/classifier.hpp"
#include "bowlforge/cli.hpp"
#include "bowlforge/constraint.hpp"
#include "bowlforge/error.hpp"
#include "bowlforge/level_set.hpp"
#include "bowlforge/profile.hpp"
#include "bowlforge/speed.hpp"
#include "bowlforge/speed_expr.hpp"
#include "bowlforge/translator_ode.hpp"

using namespace bowlforge;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

// Every run that criteria 1-5 produce, re-checked by criterion 6.
struct RecordedRun {
  std::string label;
  SpeedFunction speed;
  ProfileSolution sol;
};
std::vector<RecordedRun> g_runs;

ProfileSolution record(const std::string& label, const SpeedFunction& f, const IntegrationConfig& cfg) {
  ProfileSolution sol = integrate(f, cfg);
  g_runs.push_back({label, f, sol});
  return sol;
}

IntegrationConfig long_run() {
  IntegrationConfig c;
  c.r_max = 1e3;
  c.v_cap = 1e15;
  c.check_start_halving = false;
  return c;
}

Outcome harmonic_plane() {
  Outcome o;
  const ProfileSolution sol = record("harmonic-mean n=2", speeds::harmonic_mean(2), IntegrationConfig{});
  o.require(sol.status.kind == Termination::BlewUp, std::string("status ") + to_string(sol.status.kind));
  if (!o.pass) return o;
  const double lo = sol.status.r_low, hi = sol.status.r_high;
  o.require(lo >= std::numbers::pi / 4 - 1e-3 && hi <= std::numbers::pi / 2 + 1e-3,
            "bracket [" + num(lo) + ", " + num(hi) + "] outside [pi/4, pi/2]");
  const double r0 = sol.samples.front().r;
  int bad = 0;
  for (int i = 1; i <= 200; ++i) {
    const double r = r0 + (lo - r0) * i / 201.0;
    const double v = sol.interpolate(r);
    const double upper = 2 * r >= std::numbers::pi / 2 ? INFINITY : std::tan(2 * r);
    if (!(std::tan(r) <= v && v <= upper)) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " of 200 samples violate tan r <= v <= tan 2r");
  o.detail = o.pass ? "R in [" + num(lo) + ", " + num(hi) + "]" : o.detail;
  return o;
}

// 1 - (1+v^2)^(-1/2) = r^2/2, written without cancellation near r = 0.
double gauss_plane_exact(double r) { return std::sqrt(std::expm1(-2.0 * std::log1p(-0.5 * r * r))); }

Outcome gauss_plane() {
  Outcome o;
  const ProfileSolution sol = record("gauss:2 n=2", speeds::gauss_power(2, 2.0), IntegrationConfig{});
  double worst = 0.0;
  int checked = 0;
  for (const ProfileSample& s : sol.samples) {
    if (s.r < 2e-6 || s.r > 1.3) continue;
    worst = std::max(worst, std::abs(s.v / gauss_plane_exact(s.r) - 1.0));
    ++checked;
  }
  for (int i = 0; i <= 200; ++i) {
    const double r = 2e-6 * std::pow(1.3 / 2e-6, i / 200.0);
    worst = std::max(worst, std::abs(sol.interpolate(r) / gauss_plane_exact(r) - 1.0));
  }
  o.require(checked > 10, "too few samples in [2e-6, 1.3]");
  o.require(worst < 1e-8, "max relative error " + num(worst));
  o.require(sol.status.kind == Termination::BlewUp, std::string("status ") + to_string(sol.status.kind));
  const double lo = sol.status.r_low, hi = sol.status.r_high;
  o.require(lo <= std::sqrt(2.0) && std::sqrt(2.0) <= hi, "sqrt 2 not in [" + num(lo) + ", " + num(hi) + "]");
  o.require(hi - lo < 1e-6, "bracket width " + num(hi - lo));
  if (o.pass) o.detail = "max rel err " + num(worst) + ", width " + num(hi - lo);
  return o;
}

Outcome mean_curvature() {
  Outcome o;
  for (int n : {2, 3}) {
    const SpeedFunction f = speeds::mean_curvature(n);
    IntegrationConfig cfg;
    cfg.r_max = 100.0;
    const ProfileSolution sol = record("mean n=" + std::to_string(n), f, cfg);
    const std::string tag = "n=" + std::to_string(n) + ": ";
    o.require(sol.status.kind == Termination::ReachedHorizon, tag + "status " + to_string(sol.status.kind));
    if (sol.status.kind != Termination::ReachedHorizon) continue;
    const double slope = sol.samples.back().v / 100.0;
    o.require(std::abs(slope - 1.0 / (n - 1)) < 1e-3, tag + "v(100)/100 = " + num(slope));
    const AsymptoticFit fit = fit_asymptotics(recover_u(sol, f), compute_invariants(f));
    o.require(std::abs(fit.exponent - 2.0) <= 0.01, tag + "exponent " + num(fit.exponent));
    const double c = 1.0 / (2.0 * (n - 1));
    o.require(std::abs(fit.constant / c - 1.0) <= 0.02, tag + "constant " + num(fit.constant));
    if (o.pass) o.detail += tag + "slope " + num(slope) + ", exp " + num(fit.exponent) + ", C " + num(fit.constant) + " ";
  }
  return o;
}

Outcome scalar_curvature() {
  Outcome o;
  const SpeedFunction f = speeds::scalar_curvature(3);
  IntegrationConfig cfg;
  cfg.r_max = 1e3;
  const ProfileSolution sol = record("scalar n=3", f, cfg);
  o.require(sol.status.kind == Termination::ReachedHorizon, std::string("status ") + to_string(sol.status.kind));
  int bad = 0;
  for (const ProfileSample& s : sol.samples)
    if (!(s.r / std::sqrt(6.0) <= s.v && s.v <= s.r / std::sqrt(2.0))) ++bad;
  o.require(bad == 0, std::to_string(bad) + " samples outside r/sqrt6 <= v <= r/sqrt2");
  const Classification c = classify(f);
  o.require(std::holds_alternative<Entire>(c.verdict), std::string("verdict ") + verdict_name(c.verdict));
  const AsymptoticFit fit = fit_asymptotics(recover_u(sol, f), compute_invariants(f));
  const double expected = 1.0 / (2.0 * std::sqrt(2.0));
  o.require(std::abs(fit.constant / expected - 1.0) <= 0.02, "fitted C " + num(fit.constant));
  if (const auto* e = std::get_if<Entire>(&c.verdict); e && e->asymptotic_constant)
    o.require(std::abs(*e->asymptotic_constant / expected - 1.0) <= 0.02,
              "verdict C " + num(*e->asymptotic_constant));
  if (o.pass) o.detail = "fitted C " + num(fit.constant) + " vs " + num(expected);
  return o;
}

Outcome classification_table() {
  Outcome o;
  struct Entry {
    SpeedFunction speed;
    bool entire;
  };
  std::vector<Entry> grid;
  for (int n = 2; n <= 5; ++n) grid.push_back({speeds::mean_curvature(n), true});
  for (int n = 3; n <= 5; ++n) grid.push_back({speeds::scalar_curvature(n), true});
  for (int n = 2; n <= 4; ++n) grid.push_back({speeds::harmonic_mean(n), false});
  for (int n : {2, 3})
    for (double a : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) grid.push_back({speeds::gauss_power(n, a), a <= n / 2.0});

  int agree = 0;
  for (const Entry& e : grid) {
    const std::string label = e.speed.name() + " n=" + std::to_string(e.speed.dim());
    const ConstraintContext ctx(e.speed);
    const Classification c = classify(ctx);
    const bool entire = std::holds_alternative<Entire>(c.verdict);
    const bool bounded = std::holds_alternative<Bounded>(c.verdict);
    o.require(e.entire ? entire : bounded, label + " classified " + verdict_name(c.verdict));
    const ProfileSolution sol = record(label, e.speed, long_run());
    const ValidationReport rep = cross_validate(ctx, sol, c);
    for (const auto& m : rep.mismatches) o.require(false, label + ": " + m);
    if ((e.entire ? entire : bounded) && rep.consistent) ++agree;
  }
  if (o.pass) o.detail = std::to_string(agree) + "/" + std::to_string(grid.size()) + " entries agree";
  return o;
}

Outcome invariant_suite() {
  Outcome o;
  for (const RecordedRun& run : g_runs) {
    const ConstraintContext ctx(run.speed);
    const std::string& tag = run.label;
    const BarrierReport barriers = check_barriers(ctx, run.sol);
    o.require(barriers.sub_passed, tag + ": below w_gamma by " + num(-barriers.min_sub_margin));
    o.require(barriers.super_passed, tag + ": above w_gamma_plus");
    double worst_res = 0.0;
    bool monotone = true;
    for (const ProfileSample& s : run.sol.samples) {
      if (!(s.v_prime > 0.0)) monotone = false;
      else worst_res = std::max(worst_res, residual(run.speed, s.r, s.v, s.v_prime));
    }
    o.require(monotone, tag + ": v' <= 0 at some sample");
    o.require(worst_res < 1e-8, tag + ": residual " + num(worst_res));
    const double tip = tip_curvature_deviation(ctx, run.sol);
    o.require(tip < 1e-4, tag + ": tip curvature off by " + num(tip));
  }
  if (o.pass) o.detail = std::to_string(g_runs.size()) + " runs";
  return o;
}

Outcome start_regularization() {
  Outcome o;
  IntegrationConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-15;
  const ConvergenceReport rep =
      start_convergence(ConstraintContext(speeds::mean_curvature(2)), {1e-3, 1e-4, 1e-5}, 1.0, cfg);
  o.require(rep.shrink_factors.size() == 1, "expected one shrink factor");
  if (!o.pass) return o;
  const double factor = rep.shrink_factors[0];
  o.require(factor >= 5.0, "shrink factor " + num(factor));
  o.detail = "sup diffs " + num(rep.sup_diffs[0]) + " -> " + num(rep.sup_diffs[1]) + ", factor " + num(factor);
  return o;
}

Outcome parser() {
  Outcome o;
  struct Pair {
    std::string source;
    SpeedFunction builtin;
  };
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> expo(-2.0, 2.0);
  double worst = 0.0;
  for (int n : {2, 3, 4}) {
    const std::vector<Pair> pairs{{"S1", speeds::mean_curvature(n)},
                                  {"K/S" + std::to_string(n - 1), speeds::harmonic_mean(n)},
                                  {"(2*S2)^(1/2)", speeds::scalar_curvature(n)},
                                  {"K^(2/n)", speeds::gauss_power(n, 2.0)},
                                  {"K^(1/(2*n))", speeds::gauss_power(n, 0.5)}};
    for (const auto& [src, builtin] : pairs) {
      const SpeedFunction parsed = make_speed("expr:" + src, n);
      for (int i = 0; i < 100; ++i) {
        std::vector<double> z(n);
        for (double& zi : z) zi = std::pow(10.0, expo(rng));
        worst = std::max(worst, std::abs(parsed.evaluate(z) / builtin.evaluate(z) - 1.0));
      }
    }
  }
  o.require(worst < 1e-12, "round-trip rel err " + num(worst));

  struct Bad {
    std::string source;
    std::size_t offset;
  };
  for (const auto& [src, offset] : std::vector<Bad>{{"S1+", 3}, {"S1 * (S2", 8}, {"S1 ? S2", 3}, {"S9", 0}}) {
    std::size_t got = std::string::npos;
    try {
      parse_speed(src, 3);
    } catch (const ParseError& e) {
      got = e.offset();
    } catch (const DimensionError& e) {
      got = e.offset();
    }
    o.require(got == offset, "'" + src + "' reported offset " + (got == std::string::npos ? "none" : std::to_string(got)));
    std::ostringstream out, err;
    const int code = cli::run({"solve", "--speed", "expr:" + src, "--dim", "3"}, out, err);
    o.require(code == 2, "'" + src + "' exit code " + std::to_string(code));
  }
  if (o.pass) o.detail = "max rel err " + num(worst);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "harmonic mean n=2 blow-up bracket and tan barriers", 5, harmonic_plane},
      {2, "Gauss curvature n=2 closed form and sqrt 2 bracket", 5, gauss_plane},
      {3, "mean curvature n=2,3 slope and asymptotics", 10, mean_curvature},
      {4, "scalar curvature n=3 sandwich and constant", 10, scalar_curvature},
      {5, "classification table with cross-validation", 120, classification_table},
      {6, "invariant suite on every run", 0, invariant_suite},
      {7, "start-radius convergence, mean n=2", 0, start_regularization},
      {8, "expression round-trip and positioned errors", 0, parser},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_s > 0 && dt > c.budget_s) {
      o.pass = false;
      o.detail += " (over the " + num(c.budget_s) + " s budget)";
    }
    std::printf("%s criterion %d: %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, dt, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
