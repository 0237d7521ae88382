#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdsir/error.hpp"
#include "rdsir/io.hpp"
#include "rdsir/run.hpp"
#include "rdsir/spectral.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace rdsir::cli {

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read scenario file " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw IoError("failed writing " + path.string());
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError(0, "expected key=value, got '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

void apply_override(LoadedScenario& out, const std::string& key, const std::string& value) {
  apply_setting(out.config, key, value);
  out.overrides[key] = value;
}

// Drops snapshot times a shortened run can no longer reach.
void clip_snapshots(LoadedScenario& out) {
  auto& times = out.config.stepper.snapshot_times;
  const double t_end = out.config.stepper.t_end;
  std::vector<double> kept;
  for (double t : times) {
    if (t <= t_end) {
      kept.push_back(t);
    } else {
      out.warnings.push_back("snapshot time " + format_double(t) + " lies beyond t_end; dropped");
    }
  }
  times = std::move(kept);
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct RunOutcome {
  json manifest;
  int code{kOk};
};

RunOutcome run_to_directory(const LoadedScenario& loaded, const fs::path& out_dir) {
  const ScenarioConfig& cfg = loaded.config;
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(out_dir / "snapshots", ec);
  if (ec) throw IoError("cannot create " + (out_dir / "snapshots").string() + ": " + ec.message());

  Trajectory traj = run_scenario(cfg);

  write_series_csv(out_dir / "series.csv", traj.series);
  write_text(out_dir / "scenario.txt", serialize_scenario(cfg));

  json snaps = json::array();
  std::set<std::string> written;
  for (const StateSnapshot& s : traj.snapshots) {
    const std::string tag = "t" + time_tag(s.state.time);
    auto emit = [&](const std::string& name, const ScalarField& f) {
      const std::string rel = "snapshots/" + tag + "_" + name + ".csv";
      if (!written.insert(rel).second) return;
      write_snapshot_csv(out_dir / rel, f, s.state.time, name);
      snaps.push_back({{"time", s.state.time}, {"requested_time", s.requested_time}, {"field", name},
                       {"path", rel}});
    };
    for (Compartment c : kAllCompartments) emit(std::string(compartment_name(c)), s.state[c]);
    emit("I_plus_Istar", s.state[Compartment::I] + s.state[Compartment::Is]);
  }

  std::vector<std::string> warnings = loaded.warnings;
  warnings.insert(warnings.end(), traj.warnings.begin(), traj.warnings.end());

  RunOutcome out;
  out.code = traj.accepted() ? kOk : kInvariant;
  json& m = out.manifest;
  m["label"] = cfg.label;
  m["config_hash"] = config_hash(cfg);
  m["status"] = traj.accepted() ? "ok" : "invariant_violation";
  m["scenario_file"] = "scenario.txt";
  m["series_file"] = "series.csv";
  m["overrides"] = loaded.overrides;
  m["grid"] = {{"nx", cfg.grid.nx}, {"ny", cfg.grid.ny}, {"xmin", cfg.grid.xmin},
               {"xmax", cfg.grid.xmax}, {"ymin", cfg.grid.ymin}, {"ymax", cfg.grid.ymax}};
  m["dt"] = cfg.stepper.dt;
  m["t_end"] = traj.final_state.time;
  m["snapshots"] = snaps;
  m["solver"] = {{"steps", traj.steps}, {"helmholtz_solves", traj.solves},
                 {"max_relative_residual", traj.max_residual}};
  m["mass"] = {{"initial", traj.initial_mass}, {"birth_l1", traj.birth_l1},
               {"bound_tolerance", mass_bound_tolerance(traj.initial_mass, traj.birth_l1, cfg.rates.delta)}};
  m["warnings"] = warnings;
  m["violations"] = traj.violations;
  m["wall_clock_seconds"] = elapsed_seconds(start);
  write_text(out_dir / "manifest.json", m.dump(2) + "\n");

  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& v : traj.violations) std::cerr << "invariant violation: " << v << '\n';
  return out;
}

void add_source_options(CLI::App* app, ScenarioSource& src) {
  app->add_option("--scenario", src.path, "Scenario file (key = value format)");
  app->add_option("--preset", src.preset, "Built-in preset: fig1, fig3, fig4, fig5, fig6, basic_sir");
  app->add_option("--dt", src.dt, "Override stepper.dt");
  app->add_option("--grid", src.grid, "Override the grid size: N or NXxNY");
  app->add_option("--t-end", src.t_end, "Override stepper.t_end");
  app->add_option("--set", src.sets, "Override any scenario key: key=value (repeatable)");
}

// ---------------------------------------------------------------------------

int cmd_run(const ScenarioSource& src, const std::string& out) {
  LoadedScenario loaded = load_scenario(src);
  RunOutcome r = run_to_directory(loaded, out);
  const json& m = r.manifest;
  std::cout << "label=" << m["label"].get<std::string>() << '\n'
            << "config_hash=" << m["config_hash"].get<std::string>() << '\n'
            << "status=" << m["status"].get<std::string>() << '\n'
            << "manifest=" << (fs::path(out) / "manifest.json").string() << '\n';
  return r.code;
}

void print_sign_report(const SignReport& rep, const std::string& suffix) {
  std::cout << "r0" << suffix << "=" << format_double(rep.r0) << '\n'
            << "lambda" << suffix << "=" << format_double(rep.lambda) << '\n'
            << "consistent" << suffix << "=" << ((rep.agree || !rep.required) ? "true" : "false") << '\n'
            << "steady_min" << suffix << "=" << format_double(rep.steady.min()) << '\n'
            << "steady_max" << suffix << "=" << format_double(rep.steady.max()) << '\n'
            << "steady_mean" << suffix << "=" << format_double(integrate(rep.steady) / rep.steady.grid().area())
            << '\n'
            << "eigen_iterations" << suffix << "=" << rep.eigen_iterations << '\n'
            << "r0_iterations" << suffix << "=" << rep.r0_iterations << '\n';
}

DfeCase parse_case(const std::string& name) {
  if (name == "compliant") return DfeCase::compliant;
  if (name == "noncompliant") return DfeCase::noncompliant;
  throw InvalidArgument("--case must be auto, compliant or noncompliant");
}

int cmd_r0(const ScenarioSource& src, const std::string& which) {
  const auto start = std::chrono::steady_clock::now();
  LoadedScenario loaded = load_scenario(src);
  const ScenarioConfig& cfg = loaded.config;
  const ModelParams p = cfg.model_params();
  // Rejects xi in (0, 1) before any work.
  const DfeCase natural = dfe_case_for_xi(cfg.rates.xi);
  std::cout << "label=" << cfg.label << '\n';
  if (which == "auto") {
    // The noncompliant threshold R0* is always reported as the primary value;
    // an all-compliant birth stream additionally gets the compliant R0.
    const SignReport nc = sign_consistency(p, DfeCase::noncompliant);
    std::cout << "case=noncompliant\n";
    print_sign_report(nc, "");
    bool ok = nc.agree || !nc.required;
    if (natural == DfeCase::compliant) {
      const SignReport c = sign_consistency(p, DfeCase::compliant);
      print_sign_report(c, "_compliant");
      ok = ok && (c.agree || !c.required);
    }
    std::cout << "runtime_seconds=" << elapsed_seconds(start) << '\n';
    return ok ? kOk : kInvariant;
  }
  const SignReport rep = sign_consistency(p, parse_case(which));
  std::cout << "case=" << which << '\n';
  print_sign_report(rep, "");
  std::cout << "runtime_seconds=" << elapsed_seconds(start) << '\n';
  return (rep.agree || !rep.required) ? kOk : kInvariant;
}

int cmd_steady(const ScenarioSource& src, const std::string& which, const std::string& out) {
  LoadedScenario loaded = load_scenario(src);
  const ScenarioConfig& cfg = loaded.config;
  const DfeCase c = which == "auto" ? dfe_case_for_xi(cfg.rates.xi) : parse_case(which);
  const DfeProblem prob = dfe_problem(cfg.model_params(), c, cfg.stepper.solver_tol);
  const Rates& r = cfg.rates;
  const double rate = c == DfeCase::noncompliant ? r.nu + r.delta : r.delta;
  const LinearizationReport lin = dfe_linearization_check(prob.steady, r, c);
  std::cout << "label=" << cfg.label << '\n'
            << "case=" << dfe_case_name(c) << '\n'
            << "rate=" << format_double(rate) << '\n'
            << "steady_min=" << format_double(prob.steady.min()) << '\n'
            << "steady_max=" << format_double(prob.steady.max()) << '\n'
            << "steady_mean=" << format_double(integrate(prob.steady) / prob.steady.grid().area()) << '\n'
            << "v_cooperative=" << (lin.v_cooperative ? "true" : "false") << '\n'
            << "m_cooperative=" << (lin.m_cooperative ? "true" : "false") << '\n'
            << "v_max_real=" << format_double(lin.v_max_real) << '\n'
            << "m_max_real=" << format_double(lin.m_max_real) << '\n'
            << "linearization_passed=" << (lin.passed() ? "true" : "false") << '\n';
  if (!out.empty()) {
    write_snapshot_csv(out, prob.steady, 0.0, c == DfeCase::noncompliant ? "Ss_steady" : "S_steady");
    std::cout << "written=" << out << '\n';
  }
  return kOk;
}

void print_ladder(const std::string& prefix, const ConvergenceLadder& l) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + format_double(v[k]);
    return s;
  };
  std::cout << prefix << "_resolutions=" << list(l.resolutions) << '\n'
            << prefix << "_differences=" << list(l.differences) << '\n';
  if (l.exact) {
    std::cout << prefix << "_order=exact\n";
  } else {
    std::cout << prefix << "_orders=" << list(l.orders) << '\n'
              << prefix << "_order=" << format_double(l.observed_order()) << '\n';
  }
}

int cmd_convergence(const ScenarioSource& src, const std::string& kind, int levels) {
  if (kind != "temporal" && kind != "spatial" && kind != "both") {
    throw InvalidArgument("--kind must be temporal, spatial or both");
  }
  LoadedScenario loaded = load_scenario(src);
  std::cout << "label=" << loaded.config.label << '\n';
  if (kind == "temporal" || kind == "both") print_ladder("temporal", temporal_convergence(loaded.config, levels));
  if (kind == "spatial" || kind == "both") print_ladder("spatial", spatial_convergence(loaded.config, levels));
  return kOk;
}

int cmd_sweep(const ScenarioSource& src, const std::vector<std::string>& vary, const std::string& out) {
  LoadedScenario base = load_scenario(src);
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& v : vary) {
    auto [key, values] = split_assignment(v);
    std::vector<std::string> items;
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(item);
    if (items.empty()) throw ParseError(0, "--vary " + key + " lists no values");
    // Validates the key and every value up front.
    for (const auto& it : items) {
      ScenarioConfig probe = base.config;
      apply_setting(probe, key, it);
    }
    axes.emplace_back(key, std::move(items));
  }
  if (axes.empty()) throw ParseError(0, "sweep needs at least one --vary key=v1,v2,...");

  std::size_t total = 1;
  for (const auto& a : axes) total *= a.second.size();
  json points = json::array();
  int worst = kOk;
  for (std::size_t idx = 0; idx < total; ++idx) {
    LoadedScenario point = base;
    json values = json::object();
    std::size_t rem = idx;
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
      const std::string& value = it->second[rem % it->second.size()];
      rem /= it->second.size();
      apply_override(point, it->first, value);
    }
    for (const auto& a : axes) values[a.first] = point.overrides.at(a.first);
    point.warnings.clear();
    clip_snapshots(point);
    char dir[32];
    std::snprintf(dir, sizeof dir, "point_%03zu", idx);
    RunOutcome r = run_to_directory(point, fs::path(out) / dir);
    worst = std::max(worst, r.code);
    points.push_back({{"index", idx}, {"values", values}, {"manifest", std::string(dir) + "/manifest.json"},
                      {"status", r.manifest["status"]}, {"config_hash", r.manifest["config_hash"]}});
    std::cout << dir << " status=" << r.manifest["status"].get<std::string>() << '\n';
  }
  json sweep;
  sweep["label"] = base.config.label;
  sweep["axes"] = json::object();
  for (const auto& a : axes) sweep["axes"][a.first] = a.second;
  sweep["points"] = points;
  write_text(fs::path(out) / "sweep.json", sweep.dump(2) + "\n");
  std::cout << "sweep=" << (fs::path(out) / "sweep.json").string() << '\n';
  return worst;
}

}  // namespace

LoadedScenario load_scenario(const ScenarioSource& src) {
  if (src.path.empty() == src.preset.empty()) {
    throw ParseError(0, "give exactly one of --scenario or --preset");
  }
  LoadedScenario out;
  if (!src.path.empty()) {
    const std::string text = read_text(src.path);
    try {
      out.config = parse_scenario(text);
    } catch (const ParseError& e) {
      throw ParseError(0, src.path + ": " + e.what());
    }
  } else {
    try {
      out.config = preset(src.preset);
    } catch (const InvalidArgument& e) {
      throw ParseError(0, e.what());
    }
  }
  if (!src.dt.empty()) apply_override(out, "stepper.dt", src.dt);
  if (!src.t_end.empty()) apply_override(out, "stepper.t_end", src.t_end);
  if (!src.grid.empty()) {
    const auto x = src.grid.find('x');
    const std::string nx = src.grid.substr(0, x);
    const std::string ny = x == std::string::npos ? nx : src.grid.substr(x + 1);
    apply_override(out, "grid.nx", nx);
    apply_override(out, "grid.ny", ny);
  }
  for (const auto& s : src.sets) {
    auto [k, v] = split_assignment(s);
    apply_override(out, k, v);
  }
  clip_snapshots(out);
  try {
    out.config.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
  return out;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Reaction-diffusion SIR model with noncompliance"};
  app.require_subcommand(1);

  ScenarioSource src;
  std::string out;
  std::string which = "auto";
  std::string kind = "both";
  int levels = 3;
  std::vector<std::string> vary;

  auto* run = app.add_subcommand("run", "Simulate a scenario and write series, snapshots and a manifest");
  add_source_options(run, src);
  run->add_option("--out", out, "Output directory")->required();

  auto* r0 = app.add_subcommand("r0", "Reproduction number and principal eigenvalue at a disease-free state");
  add_source_options(r0, src);
  r0->add_option("--case", which, "auto, compliant or noncompliant");

  auto* steady = app.add_subcommand("steady-state", "Disease-free steady state and its linearization check");
  add_source_options(steady, src);
  steady->add_option("--case", which, "auto, compliant or noncompliant");
  steady->add_option("--out", out, "Write the steady field as a snapshot CSV");

  auto* conv = app.add_subcommand("convergence", "Temporal and spatial self-convergence orders");
  add_source_options(conv, src);
  conv->add_option("--kind", kind, "temporal, spatial or both");
  conv->add_option("--levels", levels, "Ladder length (>= 3)");

  auto* sweep = app.add_subcommand("sweep", "Run the Cartesian product of parameter values");
  add_source_options(sweep, src);
  sweep->add_option("--vary", vary, "key=v1,v2,... (repeatable)")->required();
  sweep->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(src, out);
    if (*r0) return cmd_r0(src, which);
    if (*steady) return cmd_steady(src, which, out);
    if (*conv) return cmd_convergence(src, kind, levels);
    if (*sweep) return cmd_sweep(src, vary, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}

}  // namespace rdsir::cli
