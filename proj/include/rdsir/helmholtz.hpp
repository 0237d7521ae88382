#pragma once

#include <memory>

#include "rdsir/grid.hpp"

namespace rdsir {

/**
 * Direct solver for (a*Id - d*Lap_h) u = rhs on a cell-centered grid with
 * zero-flux closure.
 *
 * The mirror-ghost 5-point Laplacian is diagonalized by the 2-D DCT-II, so a
 * solve is one forward transform, a pointwise division by
 * a + d*(|lx(k)| + |ly(l)|), and one inverse transform. Plans and the diagonal
 * are built once per (grid, a, d) and reused across solves.
 *
 * Not safe for concurrent use of one instance; separate instances are
 * independent.
 */
class HelmholtzSolver {
 public:
  /// Throws InvalidArgument for d <= 0 or a < 0, SolverError for a == 0
  /// (singular pure-Neumann operator).
  HelmholtzSolver(const GridSpec& grid, double absorption, double diffusion,
                  double tolerance = 1e-10);
  ~HelmholtzSolver();
  HelmholtzSolver(HelmholtzSolver&&) noexcept;
  HelmholtzSolver& operator=(HelmholtzSolver&&) noexcept;
  HelmholtzSolver(const HelmholtzSolver&) = delete;
  HelmholtzSolver& operator=(const HelmholtzSolver&) = delete;

  /// Solves and checks the relative residual against the tolerance; throws
  /// SolverError if the contract is not met.
  ScalarField solve(const ScalarField& rhs);

  const GridSpec& grid() const;
  double absorption() const;
  double diffusion() const;
  double tolerance() const;
  /// Largest relative residual observed over all solves so far.
  double max_residual() const;
  long solves() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-off solve with a freshly planned solver.
ScalarField helmholtz_solve(const ScalarField& rhs, double absorption, double diffusion,
                            double tolerance = 1e-10);

/// ||(a*Id - d*Lap_h) u - rhs||_L2 / ||rhs||_L2 (absolute when rhs == 0).
double helmholtz_residual(const ScalarField& u, const ScalarField& rhs, double absorption,
                          double diffusion);

/// Eigenvalue of the 1-D mirror-ghost second difference for cosine mode k on
/// n cells of width h: -(2 - 2 cos(k pi / n)) / h^2.
double neumann_mode_eigenvalue(int k, int n, double h);

}  // namespace rdsir
