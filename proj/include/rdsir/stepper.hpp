#pragma once

#include <vector>

#include "rdsir/helmholtz.hpp"
#include "rdsir/model.hpp"

namespace rdsir {

struct StepperConfig {
  double dt{0.01};
  double t_end{200.0};
  double solver_tol{1e-10};
  std::vector<double> snapshot_times;
  int series_stride{10};

  /// Number of uniform steps covering [0, t_end].
  long num_steps() const;
  void validate() const;

  bool operator==(const StepperConfig&) const = default;
};

/// Relative slack below zero tolerated before a state counts as negative.
inline constexpr double kNegativityTolerance = 1e-10;

/// dt * max(beta*|u|, mu*|u|, gamma, delta, nu). Values above 0.5 mean the
/// explicit reaction step is outside the documented stability heuristic.
double reaction_stiffness(const Rates& r, double state_max, double dt);

/**
 * First-order IMEX Euler: reactions explicit, diffusion implicit.
 *
 * For every compartment X: (Id - dt d_X Lap_h) X^{n+1} = X^n + dt f_X(u^n).
 * The six constant-coefficient operators are planned once at construction.
 * Nothing is clipped: negative values pass through and are reported by
 * the caller.
 */
class ImexStepper {
 public:
  ImexStepper(ModelParams params, double dt, double solver_tol = 1e-10);

  EpidemicState step(const EpidemicState& u);

  double dt() const { return dt_; }
  const ModelParams& params() const { return params_; }
  double max_residual() const;
  long solves() const;

 private:
  ModelParams params_;
  double dt_;
  std::vector<HelmholtzSolver> solvers_;
};

/// One step with freshly planned solvers.
EpidemicState imex_step(const EpidemicState& u, const ModelParams& p, double dt,
                        double solver_tol = 1e-10);

}  // namespace rdsir
