#pragma once

#include <optional>

#include "rdsir/grid.hpp"
#include "rdsir/model.hpp"

namespace rdsir {

/// Which disease-free equilibrium: everybody compliant (births with xi = 1)
/// or everybody noncompliant (xi = 0).
enum class DfeCase { compliant, noncompliant };

const char* dfe_case_name(DfeCase which);

/// Maps xi in {0, 1} to its equilibrium. Throws InvalidArgument for xi in
/// (0, 1), where the coupled steady S/S* system has no known solution theory.
DfeCase dfe_case_for_xi(double xi);

/// Positive solution of d Lap u + b - rate u = 0 under zero flux.
ScalarField steady_state(const ScalarField& birth, double rate, double diffusion,
                         double tolerance = 1e-10);

struct EigenOptions {
  double eigen_tol{1e-12};     // relative change of the eigenvalue between iterations
  double residual_tol{1e-8};   // relative to max(1, |lambda|)
  int max_iterations{20000};
  std::optional<ScalarField> initial;  // positive start vector; constant if absent
};

struct EigenResult {
  double lambda{0.0};
  ScalarField phi;  // positive, integral of phi^2 equal to 1
  int iterations{0};
  double residual{0.0};  // ||(d Lap + c) phi - lambda phi||_L2
};

/**
 * Principal eigenpair of d Lap_h + diag(c) under zero flux.
 *
 * Noda iteration: inverse iteration on sigma_k Id - d Lap_h - diag(c), where
 * sigma_k sits just above the Collatz-Wielandt upper bound max_i (A phi)_i / phi_i
 * of the current positive iterate. The shifted operator stays SPD and the
 * shift closes in on lambda_1, so nearly degenerate spectra converge in a few
 * outer steps. Inner solves use CG preconditioned by the constant-coefficient
 * Helmholtz operator with c replaced by its mean.
 */
EigenResult principal_eigenpair(double diffusion, const ScalarField& potential,
                                const EigenOptions& options = {});

struct R0Result {
  double value{0.0};
  ScalarField phi;
  DfeCase which{DfeCase::noncompliant};
  int iterations{0};
  double residual{0.0};  // ||A phi - R B phi||_L2
};

/**
 * sup over phi of int k phi^2 / int (d |grad phi|^2 + a phi^2), i.e. the
 * largest eigenvalue of A phi = R B phi with A = diag(k) and
 * B = a Id - d Lap_h. Noda iteration on the positive operator B^{-1} A, with
 * the same shift rule as principal_eigenpair.
 */
R0Result reproduction_number(double diffusion, const ScalarField& infectivity, double absorption,
                             const EigenOptions& options = {},
                             DfeCase which = DfeCase::noncompliant);

/// The disease-free steady state, principal-eigenvalue potential and
/// reproduction-number inputs of one equilibrium.
struct DfeProblem {
  DfeCase which;
  ScalarField steady;       // S~ (compliant) or S~* (noncompliant)
  ScalarField potential;    // c(x) of the principal eigenproblem
  ScalarField infectivity;  // numerator weight of R
  double absorption;        // gamma + delta (+ nu)
  double diffusion;         // d_I or d_I*
};

DfeProblem dfe_problem(const ModelParams& p, DfeCase which, double tolerance = 1e-10);

struct LinearizationReport {
  DfeCase which{DfeCase::noncompliant};
  bool v_cooperative{true};  // -V~ has nonnegative off-diagonals at every cell
  bool m_cooperative{true};  // M~ has nonnegative off-diagonals at every cell
  double v_max_real{0.0};    // max real part of eig(-V~) over cells
  double m_max_real{0.0};    // max real part of eig(M~) over cells
  double v_min_offdiag{0.0};
  double m_min_offdiag{0.0};
  bool passed() const {
    return v_cooperative && m_cooperative && v_max_real < 0.0 && m_max_real < 0.0;
  }
};

/// 2x2 V~ (infected block, order I, I*) and 4x4 M~ (order S, S*, R, R*) at a
/// disease-free point with compliant susceptibles s and noncompliant s_star.
struct LinearizationMatrices {
  double v[2][2];
  double m[4][4];
};
LinearizationMatrices linearization_matrices(double s, double s_star, const Rates& r);

/// Checks cooperativity and stability of -V~ and M~ cell by cell around the
/// given steady field.
LinearizationReport dfe_linearization_check(const ScalarField& steady, const Rates& r,
                                            DfeCase which);

struct SignReport {
  DfeCase which{DfeCase::noncompliant};
  double lambda{0.0};
  double r0{0.0};
  int sign_lambda{0};
  int sign_r0_minus_one{0};
  bool agree{false};
  bool required{false};  // |R - 1| above the knife-edge threshold
  ScalarField steady;
  int eigen_iterations{0};
  int r0_iterations{0};
};

/// Principal eigenvalue and reproduction number of one equilibrium and
/// whether sign(lambda) == sign(R - 1).
SignReport sign_consistency(const ModelParams& p, DfeCase which, double knife_edge = 1e-6,
                            const EigenOptions& options = {});

}  // namespace rdsir
