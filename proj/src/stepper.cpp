#include "rdsir/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdsir/error.hpp"

namespace rdsir {

long StepperConfig::num_steps() const { return std::max(1L, std::lround(t_end / dt)); }

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("stepper.dt must be > 0");
  if (!(t_end >= dt) || !std::isfinite(t_end)) throw InvalidArgument("stepper.t_end must be >= dt");
  if (!(solver_tol > 0.0 && solver_tol <= 1e-4)) {
    throw InvalidArgument("stepper.solver_tol must lie in (0, 1e-4]");
  }
  if (series_stride < 1) throw InvalidArgument("stepper.series_stride must be >= 1");
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= t_end)) {
      throw InvalidArgument("snapshot time " + std::to_string(t) + " outside [0, t_end]");
    }
  }
}

double reaction_stiffness(const Rates& r, double state_max, double dt) {
  return dt * std::max({r.beta * state_max, r.mu * state_max, r.gamma, r.delta, r.nu});
}

ImexStepper::ImexStepper(ModelParams params, double dt, double solver_tol)
    : params_(std::move(params)), dt_(dt) {
  params_.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  solvers_.reserve(kNumCompartments);
  for (Compartment c : kAllCompartments) {
    solvers_.emplace_back(params_.birth.grid(), 1.0, dt * params_.diffusion(c), solver_tol);
  }
}

EpidemicState ImexStepper::step(const EpidemicState& u) {
  Tendencies rhs = reaction_rhs(u, params_);
  EpidemicState next;
  for (std::size_t c = 0; c < kNumCompartments; ++c) {
    ScalarField& explicit_part = rhs[c];
    explicit_part *= dt_;
    explicit_part += u.fields[c];
    next.fields[c] = solvers_[c].solve(explicit_part);
  }
  next.time = u.time + dt_;
  return next;
}

double ImexStepper::max_residual() const {
  double m = 0.0;
  for (const auto& s : solvers_) m = std::max(m, s.max_residual());
  return m;
}

long ImexStepper::solves() const {
  long n = 0;
  for (const auto& s : solvers_) n += s.solves();
  return n;
}

EpidemicState imex_step(const EpidemicState& u, const ModelParams& p, double dt, double solver_tol) {
  ImexStepper stepper(p, dt, solver_tol);
  return stepper.step(u);
}

}  // namespace rdsir
