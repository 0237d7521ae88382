#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rdsir/diagnostics.hpp"
#include "rdsir/model.hpp"
#include "rdsir/scenario.hpp"

namespace rdsir {

struct StateSnapshot {
  double requested_time{0.0};
  EpidemicState state;  // state.time is the step time actually used
};

struct Trajectory {
  std::vector<SeriesRecord> series;
  std::vector<StateSnapshot> snapshots;
  EpidemicState final_state;
  std::vector<std::string> warnings;
  /// Negativity or mass-bound violations; empty on an accepted run.
  std::vector<std::string> violations;
  double initial_mass{0.0};
  double birth_l1{0.0};
  double running_max{0.0};
  double max_residual{0.0};
  long solves{0};
  long steps{0};

  bool accepted() const { return violations.empty(); }
};

/// Called with the state at every series sample, including t = 0.
using SampleObserver = std::function<void(const EpidemicState&, const SeriesRecord&)>;

/**
 * Steps a scenario from its initial condition to t_end.
 *
 * Time after step n is exactly n * dt. Series records are written at step 0,
 * every series_stride steps and at the final step; each snapshot time is
 * mapped to the nearest step. Step failures are rethrown as SolverError with
 * the failing time in the message; a non-finite state raises
 * InvariantViolation.
 */
Trajectory run_scenario(const ScenarioConfig& cfg, const SampleObserver& observer = {});

/// Integrated L2 distance over all six compartments.
double state_distance(const EpidemicState& a, const EpidemicState& b);

/// 2x2 block average onto a grid with half the resolution.
EpidemicState restrict_state(const EpidemicState& fine);

struct ConvergenceLadder {
  std::vector<double> resolutions;  // dt values or cell counts, coarse to fine
  std::vector<double> differences;  // successive differences, one fewer
  /// log2 ratios of successive differences; empty when every difference is 0
  std::vector<double> orders;
  bool exact{false};  // all differences vanished

  double observed_order() const { return orders.empty() ? 0.0 : orders.back(); }
};

/// Final states at dt, dt/2, ..., dt/2^(levels-1); successive differences.
ConvergenceLadder temporal_convergence(const ScenarioConfig& cfg, int levels = 3);

/// Final states on n, 2n, ... cells per side (n = cfg.grid.nx), each finer
/// state restricted down to its coarser neighbour before differencing.
ConvergenceLadder spatial_convergence(const ScenarioConfig& cfg, int levels = 3);

}  // namespace rdsir
