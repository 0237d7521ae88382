#include "rdsir/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "rdsir/error.hpp"
#include "rdsir/io.hpp"

namespace rdsir {

std::string_view ic_kind_name(IcKind k) {
  switch (k) {
    case IcKind::single_gaussian: return "single_gaussian";
    case IcKind::four_gaussians: return "four_gaussians";
    case IcKind::uniform: return "uniform";
    case IcKind::file: return "file";
  }
  return "?";
}

std::string_view infected_seed_name(InfectedSeed s) {
  return s == InfectedSeed::gaussian ? "gaussian" : "proportional";
}

ModelParams ScenarioConfig::model_params() const { return make_params(rates, grid, birth); }

void ScenarioConfig::validate() const {
  grid.validate();
  model_params();
  stepper.validate();
  if (!(ic.noncompliant_seed_fraction >= 0.0 && ic.noncompliant_seed_fraction < 1.0)) {
    throw InvalidArgument("ic.noncompliant_fraction must lie in [0, 1)");
  }
  auto check_bump = [](const GaussianBump& b, const char* what) {
    if (!(b.amplitude >= 0.0) || !std::isfinite(b.amplitude)) {
      throw InvalidArgument(std::string(what) + " amplitude must be >= 0");
    }
    if (!(b.decay > 0.0) || !std::isfinite(b.decay)) {
      throw InvalidArgument(std::string(what) + " decay must be > 0");
    }
  };
  switch (ic.kind) {
    case IcKind::single_gaussian:
      if (ic.bumps.size() != 1) throw InvalidArgument("single_gaussian needs exactly one bump");
      break;
    case IcKind::four_gaussians:
      if (ic.bumps.size() != 4) throw InvalidArgument("four_gaussians needs exactly four bumps");
      break;
    case IcKind::uniform:
      if (!(ic.level >= 0.0)) throw InvalidArgument("ic.level must be >= 0");
      break;
    case IcKind::file:
      if (ic.file.empty()) throw InvalidArgument("ic.file must name a snapshot path pattern");
      break;
  }
  for (const auto& b : ic.bumps) check_bump(b, "ic bump");
  if (ic.infected_seed == InfectedSeed::gaussian) check_bump(ic.infected_bump, "ic.infected");
  if (!(ic.infected_ratio >= 0.0)) throw InvalidArgument("ic.infected_ratio must be >= 0");
}

ScalarField gaussian_field(const GridSpec& grid, Point2 center, double amplitude, double decay) {
  if (!(decay > 0.0)) throw InvalidArgument("gaussian decay must be > 0");
  if (!(amplitude >= 0.0)) throw InvalidArgument("gaussian amplitude must be >= 0");
  ScalarField f(grid);
  for (int j = 0; j < grid.ny; ++j) {
    const double dy = grid.y(j) - center.y;
    for (int i = 0; i < grid.nx; ++i) {
      const double dx = grid.x(i) - center.x;
      f(i, j) = amplitude * std::exp(-decay * (dx * dx + dy * dy));
    }
  }
  return f;
}

bool center_outside(const GridSpec& grid, Point2 center) {
  return center.x < grid.xmin || center.x > grid.xmax || center.y < grid.ymin || center.y > grid.ymax;
}

EpidemicState build_initial_state(const ScenarioConfig& cfg) {
  cfg.validate();
  const GridSpec& g = cfg.grid;
  EpidemicState u(g);
  const InitialCondition& ic = cfg.ic;
  if (ic.kind == IcKind::file) {
    for (Compartment c : kAllCompartments) {
      std::string path = ic.file;
      const auto pos = path.find("{c}");
      if (pos == std::string::npos) throw InvalidArgument("ic.file pattern lacks '{c}'");
      path.replace(pos, 3, compartment_name(c));
      Snapshot snap = read_snapshot_csv(path);
      if (!(snap.field.grid() == g)) throw InvalidArgument("initial-condition file " + path + " does not match the grid");
      u[c] = std::move(snap.field);
    }
    u.validate();
    return u;
  }

  ScalarField s0(g);
  switch (ic.kind) {
    case IcKind::single_gaussian:
    case IcKind::four_gaussians:
      for (const auto& b : ic.bumps) s0 += gaussian_field(g, b.center, b.amplitude, b.decay);
      break;
    case IcKind::uniform:
      s0 = ScalarField(g, ic.level);
      break;
    case IcKind::file:
      break;
  }
  ScalarField i0 = ic.infected_seed == InfectedSeed::gaussian
                       ? gaussian_field(g, ic.infected_bump.center, ic.infected_bump.amplitude,
                                        ic.infected_bump.decay)
                       : ic.infected_ratio * s0;
  const double f = ic.noncompliant_seed_fraction;
  u[Compartment::Ss] = f * s0;
  u[Compartment::Is] = f * i0;
  u[Compartment::S] = std::move(s0);
  u[Compartment::I] = std::move(i0);
  return u;
}

namespace {

Rates shared_rates() {
  Rates r;
  r.delta = 0.001;
  r.diffusion.fill(0.02);
  return r;
}

InitialCondition fig1_ic() {
  InitialCondition ic;
  ic.kind = IcKind::single_gaussian;
  ic.bumps = {GaussianBump{{0.0, 0.0}, 1.0, 5.0}};
  ic.infected_seed = InfectedSeed::gaussian;
  ic.infected_bump = GaussianBump{{3.0, 3.0}, 1.0 / 20.0, 5.0};
  ic.noncompliant_seed_fraction = 1.0 / 20.0;
  return ic;
}

// Synthetic population centers; the exact placement is a free choice.
InitialCondition four_centers_ic() {
  InitialCondition ic;
  ic.kind = IcKind::four_gaussians;
  ic.bumps = {GaussianBump{{-2.5, -2.5}, 1.0, 2.0}, GaussianBump{{2.5, -2.5}, 0.8, 3.0},
              GaussianBump{{-2.5, 2.5}, 0.6, 2.5}, GaussianBump{{2.5, 2.5}, 0.9, 4.0}};
  ic.infected_seed = InfectedSeed::proportional;
  ic.infected_ratio = 1.0 / 100.0;
  ic.noncompliant_seed_fraction = 1.0 / 20.0;
  return ic;
}

}  // namespace

ScenarioConfig preset(std::string_view name) {
  ScenarioConfig c;
  c.label = std::string(name);
  c.birth = 0.02;
  c.rates = shared_rates();
  Rates& r = c.rates;
  if (name == "fig1" || name == "basic_sir") {
    r.beta = 3.0; r.gamma = 0.5; r.alpha = 0.5; r.mu = 1.0; r.nu = 1.0; r.xi = 0.05;
    c.ic = fig1_ic();
    c.stepper.snapshot_times = {0.0, 30.0, 60.0, 64.0, 68.0, 72.0, 100.0, 200.0};
    if (name == "basic_sir") {
      r.alpha = 0.0; r.mu = 0.0; r.nu = 0.0; r.xi = 1.0;
      c.ic.noncompliant_seed_fraction = 0.0;
    }
  } else if (name == "fig3") {
    r.beta = 0.1; r.gamma = 1.0; r.alpha = 0.1; r.mu = 1.0; r.nu = 0.1; r.xi = 1.0;
    c.ic = four_centers_ic();
  } else if (name == "fig4") {
    r.beta = 50.0; r.gamma = 1.0; r.alpha = 0.8; r.mu = 1.0; r.nu = 0.1; r.xi = 0.0;
    c.ic = four_centers_ic();
  } else if (name == "fig5") {
    r.beta = 1.0; r.gamma = 1.0; r.alpha = 0.5; r.mu = 0.1; r.nu = 10.0; r.xi = 0.05;
    c.ic = four_centers_ic();
  } else if (name == "fig6") {
    r.beta = 1.0; r.gamma = 1.0; r.alpha = 0.5; r.mu = 2.0; r.nu = 1.0; r.xi = 0.05;
    c.ic = four_centers_ic();
  } else {
    throw InvalidArgument("unknown preset '" + std::string(name) +
                          "' (known: fig1, fig3, fig4, fig5, fig6, basic_sir)");
  }
  if (c.stepper.snapshot_times.empty()) c.stepper.snapshot_times = {0.0, 50.0, 100.0, 200.0};
  return c;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("expected a number, got '" + std::string(s) + "'");
  }
  if (!std::isfinite(v)) throw InvalidArgument("value must be finite");
  return v;
}

int parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> parse_doubles(std::string_view s) {
  std::vector<double> out;
  for (auto item : split_list(s, ',')) out.push_back(parse_double(item));
  return out;
}

Point2 parse_point(std::string_view s) {
  auto v = parse_doubles(s);
  if (v.size() != 2) throw InvalidArgument("expected 'x, y'");
  return {v[0], v[1]};
}

std::vector<Point2> parse_points(std::string_view s) {
  std::vector<Point2> out;
  for (auto item : split_list(s, ';')) out.push_back(parse_point(item));
  return out;
}

double at_least(double v, double lo, const char* what) {
  if (!(v >= lo)) throw InvalidArgument(std::string(what) + " must be >= " + format_double(lo));
  return v;
}

double positive(double v, const char* what) {
  if (!(v > 0.0)) throw InvalidArgument(std::string(what) + " must be > 0");
  return v;
}

double unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
  return v;
}

void resize_bumps(InitialCondition& ic, std::size_t n) {
  if (ic.bumps.size() != n) ic.bumps.resize(n);
}

using Setter = std::function<void(ScenarioConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["label"] = [](ScenarioConfig& c, std::string_view v) {
      if (v.empty()) throw InvalidArgument("label must not be empty");
      c.label = std::string(v);
    };
    t["grid.xmin"] = [](ScenarioConfig& c, std::string_view v) { c.grid.xmin = parse_double(v); };
    t["grid.xmax"] = [](ScenarioConfig& c, std::string_view v) { c.grid.xmax = parse_double(v); };
    t["grid.ymin"] = [](ScenarioConfig& c, std::string_view v) { c.grid.ymin = parse_double(v); };
    t["grid.ymax"] = [](ScenarioConfig& c, std::string_view v) { c.grid.ymax = parse_double(v); };
    t["grid.nx"] = [](ScenarioConfig& c, std::string_view v) {
      c.grid.nx = static_cast<int>(at_least(parse_int(v), 2, "grid.nx"));
    };
    t["grid.ny"] = [](ScenarioConfig& c, std::string_view v) {
      c.grid.ny = static_cast<int>(at_least(parse_int(v), 2, "grid.ny"));
    };
    t["params.beta"] = [](ScenarioConfig& c, std::string_view v) { c.rates.beta = at_least(parse_double(v), 0, "beta"); };
    t["params.gamma"] = [](ScenarioConfig& c, std::string_view v) { c.rates.gamma = at_least(parse_double(v), 0, "gamma"); };
    t["params.delta"] = [](ScenarioConfig& c, std::string_view v) { c.rates.delta = positive(parse_double(v), "delta"); };
    t["params.alpha"] = [](ScenarioConfig& c, std::string_view v) { c.rates.alpha = unit_interval(parse_double(v), "alpha"); };
    t["params.mu"] = [](ScenarioConfig& c, std::string_view v) { c.rates.mu = at_least(parse_double(v), 0, "mu"); };
    t["params.nu"] = [](ScenarioConfig& c, std::string_view v) { c.rates.nu = at_least(parse_double(v), 0, "nu"); };
    t["params.xi"] = [](ScenarioConfig& c, std::string_view v) { c.rates.xi = unit_interval(parse_double(v), "xi"); };
    t["params.b"] = [](ScenarioConfig& c, std::string_view v) { c.birth = at_least(parse_double(v), 0, "b"); };
    t["params.d"] = [](ScenarioConfig& c, std::string_view v) { c.rates.diffusion.fill(positive(parse_double(v), "d")); };
    for (Compartment comp : kAllCompartments) {
      const std::string key = "params.d_" + std::string(compartment_name(comp));
      const auto idx = static_cast<std::size_t>(comp);
      t[key] = [idx](ScenarioConfig& c, std::string_view v) {
        c.rates.diffusion[idx] = positive(parse_double(v), "diffusion coefficient");
      };
    }
    t["stepper.dt"] = [](ScenarioConfig& c, std::string_view v) { c.stepper.dt = positive(parse_double(v), "stepper.dt"); };
    t["stepper.t_end"] = [](ScenarioConfig& c, std::string_view v) { c.stepper.t_end = positive(parse_double(v), "stepper.t_end"); };
    t["stepper.solver_tol"] = [](ScenarioConfig& c, std::string_view v) {
      const double tol = parse_double(v);
      if (!(tol > 0.0 && tol <= 1e-4)) throw InvalidArgument("stepper.solver_tol must lie in (0, 1e-4]");
      c.stepper.solver_tol = tol;
    };
    t["stepper.snapshot_times"] = [](ScenarioConfig& c, std::string_view v) {
      auto times = parse_doubles(v);
      for (double x : times) at_least(x, 0, "snapshot time");
      c.stepper.snapshot_times = std::move(times);
    };
    t["stepper.series_stride"] = [](ScenarioConfig& c, std::string_view v) {
      c.stepper.series_stride = static_cast<int>(at_least(parse_int(v), 1, "stepper.series_stride"));
    };
    t["ic.kind"] = [](ScenarioConfig& c, std::string_view v) {
      for (IcKind k : {IcKind::single_gaussian, IcKind::four_gaussians, IcKind::uniform, IcKind::file}) {
        if (v == ic_kind_name(k)) {
          c.ic.kind = k;
          if (k == IcKind::single_gaussian) resize_bumps(c.ic, 1);
          if (k == IcKind::four_gaussians) resize_bumps(c.ic, 4);
          return;
        }
      }
      throw InvalidArgument("ic.kind must be single_gaussian, four_gaussians, uniform or file");
    };
    t["ic.center"] = [](ScenarioConfig& c, std::string_view v) { resize_bumps(c.ic, 1); c.ic.bumps[0].center = parse_point(v); };
    t["ic.amplitude"] = [](ScenarioConfig& c, std::string_view v) {
      resize_bumps(c.ic, 1);
      c.ic.bumps[0].amplitude = at_least(parse_double(v), 0, "ic.amplitude");
    };
    t["ic.decay"] = [](ScenarioConfig& c, std::string_view v) {
      resize_bumps(c.ic, 1);
      c.ic.bumps[0].decay = positive(parse_double(v), "ic.decay");
    };
    t["ic.centers"] = [](ScenarioConfig& c, std::string_view v) {
      auto pts = parse_points(v);
      if (pts.size() != 4) throw InvalidArgument("ic.centers needs four 'x, y' pairs separated by ';'");
      resize_bumps(c.ic, 4);
      for (std::size_t k = 0; k < 4; ++k) c.ic.bumps[k].center = pts[k];
    };
    t["ic.amplitudes"] = [](ScenarioConfig& c, std::string_view v) {
      auto a = parse_doubles(v);
      if (a.size() != 4) throw InvalidArgument("ic.amplitudes needs four values");
      resize_bumps(c.ic, 4);
      for (std::size_t k = 0; k < 4; ++k) c.ic.bumps[k].amplitude = at_least(a[k], 0, "ic.amplitudes");
    };
    t["ic.decays"] = [](ScenarioConfig& c, std::string_view v) {
      auto a = parse_doubles(v);
      if (a.size() != 4) throw InvalidArgument("ic.decays needs four values");
      resize_bumps(c.ic, 4);
      for (std::size_t k = 0; k < 4; ++k) c.ic.bumps[k].decay = positive(a[k], "ic.decays");
    };
    t["ic.level"] = [](ScenarioConfig& c, std::string_view v) { c.ic.level = at_least(parse_double(v), 0, "ic.level"); };
    t["ic.file"] = [](ScenarioConfig& c, std::string_view v) { c.ic.file = std::string(v); };
    t["ic.infected"] = [](ScenarioConfig& c, std::string_view v) {
      if (v == "gaussian") c.ic.infected_seed = InfectedSeed::gaussian;
      else if (v == "proportional") c.ic.infected_seed = InfectedSeed::proportional;
      else throw InvalidArgument("ic.infected must be gaussian or proportional");
    };
    t["ic.infected_center"] = [](ScenarioConfig& c, std::string_view v) { c.ic.infected_bump.center = parse_point(v); };
    t["ic.infected_amplitude"] = [](ScenarioConfig& c, std::string_view v) {
      c.ic.infected_bump.amplitude = at_least(parse_double(v), 0, "ic.infected_amplitude");
    };
    t["ic.infected_decay"] = [](ScenarioConfig& c, std::string_view v) {
      c.ic.infected_bump.decay = positive(parse_double(v), "ic.infected_decay");
    };
    t["ic.infected_ratio"] = [](ScenarioConfig& c, std::string_view v) {
      c.ic.infected_ratio = at_least(parse_double(v), 0, "ic.infected_ratio");
    };
    t["ic.noncompliant_fraction"] = [](ScenarioConfig& c, std::string_view v) {
      const double f = parse_double(v);
      if (!(f >= 0.0 && f < 1.0)) throw InvalidArgument("ic.noncompliant_fraction must lie in [0, 1)");
      c.ic.noncompliant_seed_fraction = f;
    };
    return t;
  }();
  return table;
}

// Keys that must appear when no preset supplies them.
const std::vector<std::string>& required_without_preset() {
  static const std::vector<std::string> keys{"params.beta", "params.gamma", "params.delta",
                                             "params.alpha", "params.mu", "params.nu",
                                             "params.xi", "params.b", "ic.kind"};
  return keys;
}

struct Assignment {
  int line;
  std::string key;
  std::string value;
};

}  // namespace

void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ParseError(0, "unknown key '" + std::string(key) + "'");
  try {
    it->second(cfg, trim(value));
  } catch (const InvalidArgument& e) {
    throw ParseError(0, std::string(key) + ": " + e.what());
  }
}

ScenarioConfig parse_scenario(std::string_view text) {
  std::vector<Assignment> assignments;
  std::optional<Assignment> preset_line;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");
    if (key == "preset") {
      preset_line = Assignment{line_no, key, value};
      continue;
    }
    if (!setters().count(key)) throw ParseError(line_no, "unknown key '" + key + "'");
    assignments.push_back({line_no, std::move(key), std::move(value)});
  }

  ScenarioConfig cfg;
  if (preset_line) {
    try {
      cfg = preset(preset_line->value);
    } catch (const InvalidArgument& e) {
      throw ParseError(preset_line->line, e.what());
    }
  } else {
    for (const auto& key : required_without_preset()) {
      if (!seen.count(key)) throw ParseError(0, "missing required key '" + key + "' (or name a preset)");
    }
    const bool all_d = seen.count("params.d") > 0;
    for (Compartment c : kAllCompartments) {
      const std::string key = "params.d_" + std::string(compartment_name(c));
      if (!all_d && !seen.count(key)) {
        throw ParseError(0, "missing diffusion coefficient: give params.d or " + key);
      }
    }
  }
  // params.d sets all six; per-compartment keys refine it regardless of order.
  std::stable_partition(assignments.begin(), assignments.end(),
                        [](const Assignment& a) { return a.key == "params.d" || a.key == "ic.kind"; });
  for (const auto& a : assignments) {
    try {
      setters().at(a.key)(cfg, a.value);
    } catch (const InvalidArgument& e) {
      throw ParseError(a.line, a.key + ": " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(0, e.what());
  }
  return cfg;
}

std::string serialize_scenario(const ScenarioConfig& c) {
  std::ostringstream os;
  auto kv = [&os](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto d = [](double v) { return format_double(v); };
  auto point = [&d](Point2 p) { return d(p.x) + ", " + d(p.y); };
  kv("label", c.label);
  kv("grid.xmin", d(c.grid.xmin));
  kv("grid.xmax", d(c.grid.xmax));
  kv("grid.ymin", d(c.grid.ymin));
  kv("grid.ymax", d(c.grid.ymax));
  kv("grid.nx", std::to_string(c.grid.nx));
  kv("grid.ny", std::to_string(c.grid.ny));
  kv("params.beta", d(c.rates.beta));
  kv("params.gamma", d(c.rates.gamma));
  kv("params.delta", d(c.rates.delta));
  kv("params.alpha", d(c.rates.alpha));
  kv("params.mu", d(c.rates.mu));
  kv("params.nu", d(c.rates.nu));
  kv("params.xi", d(c.rates.xi));
  kv("params.b", d(c.birth));
  for (Compartment comp : kAllCompartments) {
    kv("params.d_" + std::string(compartment_name(comp)), d(c.rates.diffusion[static_cast<std::size_t>(comp)]));
  }
  kv("stepper.dt", d(c.stepper.dt));
  kv("stepper.t_end", d(c.stepper.t_end));
  kv("stepper.solver_tol", d(c.stepper.solver_tol));
  std::string times;
  for (std::size_t k = 0; k < c.stepper.snapshot_times.size(); ++k) {
    times += (k ? ", " : "") + d(c.stepper.snapshot_times[k]);
  }
  kv("stepper.snapshot_times", times);
  kv("stepper.series_stride", std::to_string(c.stepper.series_stride));
  kv("ic.kind", std::string(ic_kind_name(c.ic.kind)));
  if (c.ic.bumps.size() == 1) {
    kv("ic.center", point(c.ic.bumps[0].center));
    kv("ic.amplitude", d(c.ic.bumps[0].amplitude));
    kv("ic.decay", d(c.ic.bumps[0].decay));
  } else if (c.ic.bumps.size() == 4) {
    std::string centers, amps, decays;
    for (std::size_t k = 0; k < 4; ++k) {
      centers += (k ? "; " : "") + point(c.ic.bumps[k].center);
      amps += (k ? ", " : "") + d(c.ic.bumps[k].amplitude);
      decays += (k ? ", " : "") + d(c.ic.bumps[k].decay);
    }
    kv("ic.centers", centers);
    kv("ic.amplitudes", amps);
    kv("ic.decays", decays);
  }
  kv("ic.level", d(c.ic.level));
  if (!c.ic.file.empty()) kv("ic.file", c.ic.file);
  kv("ic.infected", std::string(infected_seed_name(c.ic.infected_seed)));
  kv("ic.infected_center", point(c.ic.infected_bump.center));
  kv("ic.infected_amplitude", d(c.ic.infected_bump.amplitude));
  kv("ic.infected_decay", d(c.ic.infected_bump.decay));
  kv("ic.infected_ratio", d(c.ic.infected_ratio));
  kv("ic.noncompliant_fraction", d(c.ic.noncompliant_seed_fraction));
  return os.str();
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : serialize_scenario(cfg)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rdsir
