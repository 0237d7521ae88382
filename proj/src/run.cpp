#include "rdsir/run.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "rdsir/error.hpp"
#include "rdsir/io.hpp"
#include "rdsir/stepper.hpp"

namespace rdsir {

namespace {

std::string at_time(double t) { return "t=" + format_double(t); }

}  // namespace

Trajectory run_scenario(const ScenarioConfig& cfg, const SampleObserver& observer) {
  cfg.validate();
  const StepperConfig& sc = cfg.stepper;
  const ModelParams params = cfg.model_params();
  const double dt = sc.dt;
  const long n_steps = sc.num_steps();

  Trajectory traj;
  EpidemicState u = build_initial_state(cfg);
  u.time = 0.0;
  traj.initial_mass = total_population(u);
  traj.birth_l1 = norm(params.birth, NormKind::L1);
  traj.running_max = u.max_abs();
  const double delta = cfg.rates.delta;
  const double bound_tol = mass_bound_tolerance(traj.initial_mass, traj.birth_l1, delta);

  if (std::abs(n_steps * dt - sc.t_end) > 1e-9 * sc.t_end) {
    traj.warnings.push_back("t_end is not a multiple of dt; the run stops at " +
                            at_time(n_steps * dt));
  }
  for (const auto& b : cfg.ic.bumps) {
    if (cfg.ic.kind != IcKind::uniform && cfg.ic.kind != IcKind::file && center_outside(cfg.grid, b.center)) {
      traj.warnings.push_back("initial bump centered outside the domain");
    }
  }

  // step index -> requested snapshot times
  std::multimap<long, double> snapshot_steps;
  for (double t : sc.snapshot_times) {
    snapshot_steps.emplace(std::clamp(std::lround(t / dt), 0L, n_steps), t);
  }

  bool warned_stiff = false;
  bool warned_negative = false;
  bool warned_bound = false;
  auto sample = [&]() {
    SeriesRecord rec = make_record(u, traj.initial_mass, traj.birth_l1, delta);
    if (rec.bound_gap < -bound_tol && !warned_bound) {
      warned_bound = true;
      traj.violations.push_back("mass bound exceeded at " + at_time(u.time) + " by " +
                                format_double(-rec.bound_gap));
    }
    traj.series.push_back(rec);
    if (observer) observer(u, rec);
  };
  auto snapshot = [&](long step) {
    auto [lo, hi] = snapshot_steps.equal_range(step);
    for (auto it = lo; it != hi; ++it) traj.snapshots.push_back({it->second, u});
  };

  sample();
  snapshot(0);
  ImexStepper stepper(params, dt, sc.solver_tol);
  for (long n = 1; n <= n_steps; ++n) {
    if (!warned_stiff && reaction_stiffness(cfg.rates, traj.running_max, dt) > 0.5) {
      warned_stiff = true;
      traj.warnings.push_back("dt * max reaction rate exceeds 0.5 at " + at_time(u.time) +
                              "; nonnegativity is not expected to hold");
    }
    try {
      u = stepper.step(u);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (step ending at " + at_time(n * dt) + ")");
    }
    u.time = static_cast<double>(n) * dt;
    const double vmax = u.max_abs();
    if (!std::isfinite(vmax)) throw InvariantViolation("non-finite state at " + at_time(u.time));
    traj.running_max = std::max(traj.running_max, vmax);
    const double vmin = u.min_value();
    if (vmin < -kNegativityTolerance * traj.running_max && !warned_negative) {
      warned_negative = true;
      traj.violations.push_back("negative density " + format_double(vmin) + " at " + at_time(u.time));
    }
    if (n % sc.series_stride == 0 || n == n_steps) sample();
    snapshot(n);
  }
  traj.steps = n_steps;
  traj.max_residual = stepper.max_residual();
  traj.solves = stepper.solves();
  traj.final_state = std::move(u);
  return traj;
}

double state_distance(const EpidemicState& a, const EpidemicState& b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < kNumCompartments; ++c) {
    const double d = norm(a.fields[c] - b.fields[c], NormKind::L2);
    sum += d * d;
  }
  return std::sqrt(sum);
}

EpidemicState restrict_state(const EpidemicState& fine) {
  const GridSpec& gf = fine.grid();
  if (gf.nx % 2 != 0 || gf.ny % 2 != 0) throw InvalidArgument("restriction needs even cell counts");
  GridSpec gc = gf;
  gc.nx /= 2;
  gc.ny /= 2;
  EpidemicState out(gc);
  out.time = fine.time;
  for (std::size_t c = 0; c < kNumCompartments; ++c) {
    const ScalarField& f = fine.fields[c];
    ScalarField& g = out.fields[c];
    for (int j = 0; j < gc.ny; ++j) {
      for (int i = 0; i < gc.nx; ++i) {
        g(i, j) = 0.25 * (f(2 * i, 2 * j) + f(2 * i + 1, 2 * j) + f(2 * i, 2 * j + 1) +
                          f(2 * i + 1, 2 * j + 1));
      }
    }
  }
  return out;
}

namespace {

ScenarioConfig bare_run(ScenarioConfig cfg) {
  cfg.stepper.snapshot_times.clear();
  cfg.stepper.series_stride = std::max(1L, cfg.stepper.num_steps());
  return cfg;
}

void finish_orders(ConvergenceLadder& ladder) {
  const auto& e = ladder.differences;
  ladder.exact = std::all_of(e.begin(), e.end(), [](double v) { return v == 0.0; });
  if (ladder.exact) return;
  for (std::size_t k = 0; k + 1 < e.size(); ++k) {
    ladder.orders.push_back(std::log2(e[k] / e[k + 1]));
  }
}

}  // namespace

ConvergenceLadder temporal_convergence(const ScenarioConfig& cfg, int levels) {
  if (levels < 3) throw InvalidArgument("a convergence ladder needs at least 3 levels");
  ConvergenceLadder ladder;
  std::vector<EpidemicState> finals;
  for (int k = 0; k < levels; ++k) {
    ScenarioConfig c = bare_run(cfg);
    c.stepper.dt = cfg.stepper.dt / std::pow(2.0, k);
    c = bare_run(c);
    ladder.resolutions.push_back(c.stepper.dt);
    finals.push_back(run_scenario(c).final_state);
  }
  for (int k = 0; k + 1 < levels; ++k) ladder.differences.push_back(state_distance(finals[k], finals[k + 1]));
  finish_orders(ladder);
  return ladder;
}

ConvergenceLadder spatial_convergence(const ScenarioConfig& cfg, int levels) {
  if (levels < 3) throw InvalidArgument("a convergence ladder needs at least 3 levels");
  ConvergenceLadder ladder;
  std::vector<EpidemicState> finals;
  for (int k = 0; k < levels; ++k) {
    ScenarioConfig c = bare_run(cfg);
    c.grid.nx = cfg.grid.nx << k;
    c.grid.ny = cfg.grid.ny << k;
    ladder.resolutions.push_back(c.grid.nx);
    finals.push_back(run_scenario(c).final_state);
  }
  for (int k = 0; k + 1 < levels; ++k) {
    ladder.differences.push_back(state_distance(finals[k], restrict_state(finals[k + 1])));
  }
  finish_orders(ladder);
  return ladder;
}

}  // namespace rdsir
