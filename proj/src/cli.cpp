#include "bowlforge/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "bowlforge/classifier.hpp"
#include "bowlforge/error.hpp"
#include "bowlforge/gauss_oracle.hpp"
#include "bowlforge/level_set.hpp"
#include "bowlforge/profile.hpp"
#include "bowlforge/report.hpp"

namespace bowlforge::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  std::string speed;
  int dim = 2;
  double rmax = 0.0;
  double rstart = 0.0;
  double vcap = 0.0;
  double tol = 0.0;
  long max_steps = 0;
  std::string out;
  std::string format = "csv";
  bool verify = false;
  std::string starts;
  // sweep
  std::string alphas;
  std::string dims;
  int jobs = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw UsageError("empty entry in list '" + text + "'");
    items.push_back(item);
  }
  if (items.empty()) throw UsageError("empty list");
  return items;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

// Defaults: solve uses the plain integrator settings; classification and
// verification runs use a long horizon and a high cap.
IntegrationConfig make_config(const Options& o, const CLI::App& sub, bool long_run) {
  IntegrationConfig c;
  if (long_run) {
    c.r_max = 1e3;
    c.v_cap = 1e15;
  }
  if (sub.count("--rmax")) c.r_max = o.rmax;
  if (sub.count("--rstart")) c.r_start = o.rstart;
  if (sub.count("--vcap")) c.v_cap = o.vcap;
  if (sub.count("--max-steps")) c.max_steps = o.max_steps;
  if (sub.count("--tol")) {
    c.rel_tol = o.tol;
    c.abs_tol = 1e-2 * o.tol;
  }
  c.validate();
  return c;
}

RunManifest make_manifest(const std::string& command, const Options& o, const CLI::App& sub) {
  RunManifest m;
  m.command = command;
  m.speed = o.speed;
  m.dim = o.dim;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name();
    if (opt->count() == 0 || name == "--speed" || name == "--dim" || name == "--help") continue;
    m.overrides[name.substr(2)] = opt->as<std::string>();
  }
  return m;
}

SpeedFunction load_speed(const Options& o) {
  SpeedFunction speed = make_speed(o.speed, o.dim);
  const AdmissibilityReport rep = verify_admissibility(speed, 64);
  if (!rep.passed()) {
    for (const AxiomCheck& c : rep.checks) {
      if (c.passed) continue;
      std::ostringstream os;
      os << o.speed << " fails " << c.axiom;
      if (!c.witness.empty()) {
        os << " at (";
        for (std::size_t i = 0; i < c.witness.size(); ++i) os << (i ? ", " : "") << c.witness[i];
        os << ")";
      }
      if (!c.detail.empty()) os << ": " << c.detail;
      throw AdmissibilityError(os.str());
    }
  }
  return speed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json profile_json(const ProfileSolution& sol) {
  return {{"status", to_json(sol.status)},
          {"samples", sol.samples.size()},
          {"steps", {{"accepted", sol.accepted_steps}, {"rejected", sol.rejected_steps}}},
          {"start_sensitivity", std::isfinite(sol.start_sensitivity) ? json(sol.start_sensitivity) : json(nullptr)}};
}

// ---------------------------------------------------------------- solve

int cmd_solve(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
  const SpeedFunction speed = load_speed(o);
  const ConstraintContext ctx(speed);
  const IntegrationConfig cfg = make_config(o, sub, false);
  const ProfileSolution sol = integrate(ctx, cfg);
  BowlProfile bowl = recover_u(sol, speed);

  ClassifyOptions copt;
  copt.bracket_radius = false;
  Classification cls = classify(ctx, copt);
  if (auto* b = std::get_if<Bounded>(&cls.verdict); b && sol.status.kind == Termination::BlewUp) {
    b->R_low = sol.status.r_low;
    b->R_high = sol.status.r_high;
  }
  json fit = nullptr;
  try {
    bowl.asymptotic_fit = fit_asymptotics(bowl, ctx.invariants());
    fit = to_json(*bowl.asymptotic_fit);
  } catch (const NotApplicable&) {
  }

  RunManifest manifest = make_manifest("solve", o, sub);
  json report = {{"schema", kSchema},
                 {"command", "solve"},
                 {"speed", o.speed},
                 {"dim", o.dim},
                 {"invariants", to_json(ctx.invariants())},
                 {"config", to_json(cfg)},
                 {"classification", to_json(cls)},
                 {"asymptotic_fit", fit}};
  report.update(profile_json(sol));

  const std::string csv = profile_csv(bowl);
  if (o.format == "csv") {
    if (o.out.empty()) {
      out << csv;
    } else {
      manifest.outputs = {o.out, o.out + ".json"};
      manifest.wall_time_s = seconds_since(t0);
      report["manifest"] = to_json(manifest);
      write_atomic(o.out, csv);
      write_atomic(o.out + ".json", report.dump(2) + "\n");
    }
  } else {
    if (!o.out.empty()) manifest.outputs = {o.out};
    manifest.wall_time_s = seconds_since(t0);
    report["manifest"] = to_json(manifest);
    if (o.out.empty())
      out << report.dump(2) << "\n";
    else
      write_atomic(o.out, report.dump(2) + "\n");
  }
  if (sol.status.kind == Termination::LeftDomain) {
    err << "error: integration left the domain: " << sol.status.reason << "\n";
    return kNumericalFailure;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- classify

json classify_report(const SpeedFunction& speed, const Options& o, const IntegrationConfig& cfg,
                     bool run_verify, bool& consistent) {
  const ConstraintContext ctx(speed);
  ClassifyOptions copt;
  copt.bracket_config = cfg;
  copt.bracket_config.check_start_halving = false;
  Classification cls = classify(ctx, copt);
  json report = {{"schema", kSchema}, {"command", "classify"}, {"speed", o.speed}, {"dim", speed.dim()}};
  report.update(to_json(cls));
  report["invariants"] = to_json(ctx.invariants());
  consistent = true;
  if (run_verify) {
    const ProfileSolution sol = integrate(ctx, cfg);
    const ValidationReport rep = cross_validate(ctx, sol, cls);
    consistent = rep.consistent;
    report["validation"] = to_json(rep);
    report["profile"] = profile_json(sol);
  }
  return report;
}

int cmd_classify(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const SpeedFunction speed = load_speed(o);
  const IntegrationConfig cfg = make_config(o, sub, true);
  bool consistent = true;
  json report = classify_report(speed, o, cfg, o.verify, consistent);
  RunManifest manifest = make_manifest("classify", o, sub);
  if (!o.out.empty()) manifest.outputs = {o.out};
  manifest.wall_time_s = seconds_since(t0);
  report["manifest"] = to_json(manifest);
  if (o.out.empty())
    out << report.dump(2) << "\n";
  else
    write_atomic(o.out, report.dump(2) + "\n");
  if (!consistent) {
    err << "error: classification disagrees with the numerical profile\n";
    return kInvariantFailure;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- verify

struct Suite {
  json checks = json::array();
  bool all = true;
  void add(const std::string& name, bool passed, json detail) {
    checks.push_back({{"name", name}, {"passed", passed}, {"detail", std::move(detail)}});
    all = all && passed;
  }
};

json nullable(std::optional<std::size_t> i) { return i ? json(*i) : json(nullptr); }

int cmd_verify(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const SpeedFunction speed = load_speed(o);
  const ConstraintContext ctx(speed);
  const SpeedInvariants& inv = ctx.invariants();
  const IntegrationConfig cfg = make_config(o, sub, true);
  const ProfileSolution sol = integrate(ctx, cfg);
  const BowlProfile bowl = recover_u(sol, speed);
  Suite suite;

  const AdmissibilityReport adm = verify_admissibility(speed, 200);
  json adm_detail = json::object();
  for (const AxiomCheck& c : adm.checks) adm_detail[c.axiom] = c.passed;
  suite.add("admissibility", adm.passed(), adm_detail);

  suite.add("integration", sol.status.kind != Termination::LeftDomain, to_json(sol.status));

  const BarrierReport bar = check_barriers(ctx, sol);
  suite.add("subsolution_barrier", bar.sub_passed,
            {{"min_margin", bar.min_sub_margin}, {"witness", nullable(bar.sub_witness)}});
  if (bar.max_super_excess)
    suite.add("supersolution_barrier", bar.super_passed,
              {{"max_excess", *bar.max_super_excess}, {"witness", nullable(bar.super_witness)}});

  const ConvexityReport conv = check_convexity(bowl);
  suite.add("convexity", conv.passed,
            {{"min_vprime", conv.min_vprime}, {"min_v_over_r", conv.min_v_over_r}, {"witness", nullable(conv.witness)}});

  double max_res = 0.0;
  bool res_ok = true;
  for (const BowlSample& s : bowl.samples) {
    if (!std::isfinite(s.residual)) res_ok = false;
    else max_res = std::max(max_res, s.residual);
  }
  suite.add("residual", res_ok && max_res < 1e-8, {{"max", max_res}, {"tolerance", 1e-8}});

  const double tip = tip_curvature_deviation(ctx, sol);
  suite.add("tip_curvature", tip < 1e-4, {{"max_deviation", tip}, {"gamma", inv.gamma}, {"tolerance", 1e-4}});

  {
    ClassifyOptions copt;
    copt.bracket_config = cfg;
    copt.bracket_config.check_start_halving = false;
    const Classification cls = classify(ctx, copt);
    const ValidationReport rep = cross_validate(ctx, sol, cls);
    json detail = to_json(cls);
    detail["validation"] = to_json(rep);
    suite.add("cross_validation", rep.consistent, detail);
  }

  if (!o.starts.empty()) {
    std::vector<double> starts;
    for (const std::string& s : split_list(o.starts)) starts.push_back(parse_double(s));
    IntegrationConfig scfg = cfg;
    scfg.rel_tol = std::min(cfg.rel_tol, 1e-12);
    scfg.abs_tol = std::min(cfg.abs_tol, 1e-15);
    const double r_ref = std::min(1.0, 0.5 * sol.r_end());
    const ConvergenceReport rep = start_convergence(ctx, starts, r_ref, scfg);
    suite.add("start_convergence", rep.linear_shrink,
              {{"starts", rep.starts},
               {"r_ref", r_ref},
               {"sup_diffs", rep.sup_diffs},
               {"shrink_factors", rep.shrink_factors},
               {"fitted_rate", std::isfinite(rep.fitted_rate) ? json(rep.fitted_rate) : json(nullptr)}});
  }

  if (speed.family() == SpeedFamily::GaussPower) {
    const GaussSeparable oracle(speed.dim(), speed.alpha());
    const auto R = oracle.blowup_radius();
    const double hi = R ? 0.9 * *R : sol.r_end();
    double worst = 0.0;
    std::size_t count = 0;
    for (const ProfileSample& s : sol.samples) {
      if (s.r < 2.0 * cfg.r_start || s.r > hi || s.v > 1e6) continue;
      worst = std::max(worst, std::abs(s.v / oracle.v(s.r) - 1.0));
      ++count;
    }
    suite.add("closed_form_oracle", count > 0 && worst < 1e-8,
              {{"max_rel_error", worst}, {"samples", count}, {"tolerance", 1e-8},
               {"R", R ? json(*R) : json(nullptr)}});
    if (R) {
      const bool inside = sol.status.kind == Termination::BlewUp && sol.status.r_low <= *R && *R <= sol.status.r_high;
      suite.add("blowup_radius", inside, {{"R", *R}, {"status", to_json(sol.status)}});
    }
  }

  if (speed.family() == SpeedFamily::Scalar && speed.dim() >= 3) {
    const double n = speed.dim();
    const double lo_c = 1.0 / std::sqrt(n * (n - 1.0)), hi_c = 1.0 / std::sqrt((n - 1.0) * (n - 2.0));
    std::optional<std::size_t> witness;
    for (std::size_t i = 0; i < sol.samples.size() && !witness; ++i) {
      const ProfileSample& s = sol.samples[i];
      if (s.v < lo_c * s.r * (1.0 - 1e-12) || s.v > hi_c * s.r * (1.0 + 1e-12)) witness = i;
    }
    suite.add("scalar_barriers", !witness,
              {{"lower_slope", lo_c}, {"upper_slope", hi_c}, {"witness", nullable(witness)}});
  }

  if (speed.family() == SpeedFamily::HarmonicMean) {
    // r <= atan v <= n r is tan(r) <= v <= tan(n r) read before tan(n r) blows up.
    const double n = speed.dim();
    const double r_lim = sol.status.kind == Termination::BlewUp ? sol.status.r_low : sol.r_end();
    std::optional<std::size_t> witness;
    for (std::size_t i = 0; i < sol.samples.size() && !witness; ++i) {
      const ProfileSample& s = sol.samples[i];
      if (s.r > r_lim) break;
      const double a = std::atan(s.v);
      if (a < s.r * (1.0 - 1e-12) || a > n * s.r * (1.0 + 1e-12)) witness = i;
    }
    json detail = {{"witness", nullable(witness)}};
    bool ok = !witness;
    if (sol.status.kind == Termination::BlewUp) {
      const double lo = std::numbers::pi / (2.0 * n), hi = std::numbers::pi / 2.0;
      ok = ok && sol.status.r_low >= lo - 1e-3 && sol.status.r_high <= hi + 1e-3;
      detail["R"] = {sol.status.r_low, sol.status.r_high};
      detail["allowed"] = {lo, hi};
    } else {
      ok = false;
    }
    suite.add("harmonic_barriers", ok, detail);
  }

  RunManifest manifest = make_manifest("verify", o, sub);
  if (!o.out.empty()) manifest.outputs = {o.out};
  manifest.wall_time_s = seconds_since(t0);
  json report = {{"schema", kSchema},   {"command", "verify"}, {"speed", o.speed},
                 {"dim", o.dim},        {"passed", suite.all}, {"checks", suite.checks},
                 {"invariants", to_json(inv)}, {"manifest", to_json(manifest)}};
  if (o.out.empty())
    out << report.dump(2) << "\n";
  else
    write_atomic(o.out, report.dump(2) + "\n");
  if (!suite.all) {
    for (const json& c : suite.checks)
      if (!c["passed"].get<bool>()) err << "invariant failed: " << c["name"].get<std::string>() << "\n";
    return kInvariantFailure;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.speed.find("{alpha}") == std::string::npos) throw UsageError("--speed must contain {alpha}");
  if (o.out.empty()) throw UsageError("sweep needs --out <directory>");
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
  const std::vector<std::string> alphas = split_list(o.alphas);
  std::vector<int> dims;
  for (const std::string& d : split_list(o.dims)) {
    const double v = parse_double(d);
    if (v != std::floor(v)) throw UsageError("dimension must be an integer: " + d);
    dims.push_back(static_cast<int>(v));
  }
  for (const std::string& a : alphas) parse_double(a);
  const IntegrationConfig cfg = make_config(o, sub, true);

  struct Task {
    int dim;
    std::string alpha;
    std::string spec;
    std::string file;
    json row;
    int code = kSuccess;
  };
  std::vector<Task> tasks;
  for (int d : dims) {
    for (const std::string& a : alphas) {
      std::string spec = o.speed;
      for (std::size_t p; (p = spec.find("{alpha}")) != std::string::npos;) spec.replace(p, 7, a);
      tasks.push_back({d, a, spec, "run_n" + std::to_string(d) + "_a" + a + ".json", {}, kSuccess});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      Task& t = tasks[i];
      Options local = o;
      local.speed = t.spec;
      local.dim = t.dim;
      json report;
      try {
        const SpeedFunction speed = load_speed(local);
        bool consistent = true;
        report = classify_report(speed, local, cfg, true, consistent);
        if (!consistent) t.code = kInvariantFailure;
      } catch (const AdmissibilityError& e) {
        report = {{"schema", kSchema}, {"speed", t.spec}, {"dim", t.dim}, {"error", e.what()}};
        t.code = kAdmissibilityFailure;
      } catch (const std::exception& e) {
        report = {{"schema", kSchema}, {"speed", t.spec}, {"dim", t.dim}, {"error", e.what()}};
        t.code = kNumericalFailure;
      }
      write_atomic(fs::path(o.out) / t.file, report.dump(2) + "\n");
      t.row = report;
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(o.jobs, static_cast<int>(tasks.size()));
  for (int k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  std::string csv = "speed,dim,alpha,verdict,rule_fired,status,R_low,R_high,consistent,file\n";
  int code = kSuccess;
  for (const Task& t : tasks) {
    const json& r = t.row;
    auto field = [&](const char* key) -> std::string {
      return r.contains(key) && r[key].is_string() ? r[key].get<std::string>() : "";
    };
    std::string status, rlo, rhi, consistent;
    if (r.contains("profile")) status = r["profile"]["status"]["kind"].get<std::string>();
    if (r.contains("R") && r["R"].is_array()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.16e", r["R"][0].get<double>());
      rlo = buf;
      std::snprintf(buf, sizeof buf, "%.16e", r["R"][1].get<double>());
      rhi = buf;
    }
    if (r.contains("validation")) consistent = r["validation"]["consistent"].get<bool>() ? "true" : "false";
    csv += "\"" + t.spec + "\"," + std::to_string(t.dim) + "," + t.alpha + "," + field("verdict") + "," +
           field("rule_fired") + "," + status + "," + rlo + "," + rhi + "," + consistent + "," + t.file + "\n";
    if (t.code != kSuccess) {
      err << t.spec << " (n=" << t.dim << "): " << (r.contains("error") ? r["error"].get<std::string>() : "classification disagrees with the profile") << "\n";
      code = std::max(code, t.code);
    }
  }
  write_atomic(fs::path(o.out) / "summary.csv", csv);
  RunManifest manifest = make_manifest("sweep", o, sub);
  manifest.outputs = {(fs::path(o.out) / "summary.csv").string()};
  for (const Task& t : tasks) manifest.outputs.push_back((fs::path(o.out) / t.file).string());
  manifest.wall_time_s = seconds_since(t0);
  write_atomic(fs::path(o.out) / "manifest.json", to_json(manifest).dump(2) + "\n");
  out << csv;
  return code;
}

void add_common(CLI::App* sub, Options& o, bool solve_like) {
  sub->add_option("--speed", o.speed, "speed id: mean, harmonic-mean, scalar, gauss:<a>, power-mean:<p>:<a>, expr:<src>")
      ->required();
  sub->add_option("--dim", o.dim, "dimension n >= 2");
  sub->add_option("--rmax", o.rmax, "integration horizon");
  sub->add_option("--rstart", o.rstart, "regularization radius");
  sub->add_option("--vcap", o.vcap, "blow-up threshold on v");
  sub->add_option("--tol", o.tol, "relative tolerance (absolute tolerance is tol/100)");
  sub->add_option("--max-steps", o.max_steps, "step budget per integration");
  sub->add_option("--out", o.out, solve_like ? "output path" : "output path for the JSON report");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotationally symmetric translating solitons of curvature flows", "bowlforge"};
  app.require_subcommand(1);
  Options o;

  CLI::App* solve = app.add_subcommand("solve", "integrate the profile and export CSV plus a JSON sidecar");
  add_common(solve, o, true);
  solve->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* classify_cmd = app.add_subcommand("classify", "decide entire vs bounded");
  add_common(classify_cmd, o, false);
  classify_cmd->add_flag("--verify", o.verify, "cross-check the verdict against an integration");

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  add_common(verify, o, false);
  verify->add_option("--starts", o.starts, "comma-separated start radii for the convergence check");

  CLI::App* sweep = app.add_subcommand("sweep", "classify a grid of (alpha, n)");
  add_common(sweep, o, false);
  sweep->add_option("--alphas", o.alphas, "comma-separated alpha values")->required();
  sweep->add_option("--dims", o.dims, "comma-separated dimensions")->required();
  sweep->add_option("--jobs", o.jobs, "worker threads");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("bowlforge");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  if (*solve) return cmd_solve(o, *solve, out, err);
  if (*classify_cmd) return cmd_classify(o, *classify_cmd, out, err);
  if (*verify) return cmd_verify(o, *verify, out, err);
  return cmd_sweep(o, *sweep, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const AdmissibilityError& e) {
    err << "error: not admissible: " << e.what() << "\n";
    return kAdmissibilityFailure;
  } catch (const NotHomogeneous& e) {
    err << "error: not admissible: " << e.what() << "\n";
    return kAdmissibilityFailure;
  } catch (const std::exception& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace bowlforge::cli
