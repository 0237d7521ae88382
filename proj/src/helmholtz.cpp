#include "rdsir/helmholtz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "rdsir/error.hpp"

namespace rdsir {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

double neumann_mode_eigenvalue(int k, int n, double h) {
  return -(2.0 - 2.0 * std::cos(std::numbers::pi * k / n)) / (h * h);
}

struct HelmholtzSolver::Impl {
  GridSpec grid;
  double a;
  double d;
  double tol;
  double* buf{nullptr};
  double* coef{nullptr};
  fftw_plan forward{nullptr};
  fftw_plan backward{nullptr};
  std::vector<double> inv_diag;
  double max_res{0.0};
  long count{0};

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buf) fftw_free(buf);
    if (coef) fftw_free(coef);
  }
};

HelmholtzSolver::HelmholtzSolver(const GridSpec& grid, double absorption, double diffusion,
                                 double tolerance)
    : impl_(std::make_unique<Impl>()) {
  grid.validate();
  if (!(diffusion > 0.0) || !std::isfinite(diffusion)) {
    throw InvalidArgument("Helmholtz diffusion must be > 0");
  }
  if (!(absorption >= 0.0) || !std::isfinite(absorption)) {
    throw InvalidArgument("Helmholtz absorption must be >= 0");
  }
  if (absorption == 0.0) {
    throw SolverError("singular Helmholtz system: zero absorption with pure Neumann closure");
  }
  if (!(tolerance > 0.0)) throw InvalidArgument("solver tolerance must be > 0");

  Impl& s = *impl_;
  s.grid = grid;
  s.a = absorption;
  s.d = diffusion;
  s.tol = tolerance;

  const int nx = grid.nx;
  const int ny = grid.ny;
  // FFTW's REDFT10 followed by REDFT01 scales by 2n per dimension.
  const double scale = 1.0 / (4.0 * nx * ny);
  s.inv_diag.resize(grid.size());
  for (int l = 0; l < ny; ++l) {
    const double ly = -neumann_mode_eigenvalue(l, ny, grid.hy());
    for (int k = 0; k < nx; ++k) {
      const double lx = -neumann_mode_eigenvalue(k, nx, grid.hx());
      s.inv_diag[grid.index(k, l)] = scale / (absorption + diffusion * (lx + ly));
    }
  }

  std::lock_guard<std::mutex> lock(planner_mutex());
  s.buf = fftw_alloc_real(grid.size());
  s.coef = fftw_alloc_real(grid.size());
  // FFTW_ESTIMATE keeps plan selection, and hence roundoff, reproducible.
  s.forward = fftw_plan_r2r_2d(ny, nx, s.buf, s.coef, FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
  s.backward = fftw_plan_r2r_2d(ny, nx, s.coef, s.buf, FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
  if (!s.forward || !s.backward) throw SolverError("failed to plan cosine transforms");
}

HelmholtzSolver::~HelmholtzSolver() = default;
HelmholtzSolver::HelmholtzSolver(HelmholtzSolver&&) noexcept = default;
HelmholtzSolver& HelmholtzSolver::operator=(HelmholtzSolver&&) noexcept = default;

ScalarField HelmholtzSolver::solve(const ScalarField& rhs) {
  Impl& s = *impl_;
  if (!(rhs.grid() == s.grid)) throw InvalidArgument("rhs grid does not match the solver grid");
  if (!rhs.all_finite()) throw InvalidArgument("Helmholtz rhs holds non-finite values");
  const std::size_t n = s.grid.size();
  auto transform_solve = [&](std::span<const double> in) {
    std::copy(in.begin(), in.end(), s.buf);
    fftw_execute(s.forward);
    for (std::size_t k = 0; k < n; ++k) s.coef[k] *= s.inv_diag[k];
    fftw_execute(s.backward);
    return ScalarField(s.grid, std::vector<double>(s.buf, s.buf + n));
  };
  ScalarField u = transform_solve(rhs.values());

  double res = helmholtz_residual(u, rhs, s.a, s.d);
  // Badly conditioned operators (small a against large d/h^2) can leave
  // transform roundoff above the tolerance; refine on the residual.
  for (int pass = 0; pass < 3 && !(res <= s.tol); ++pass) {
    ScalarField r = apply_laplacian(u, s.d);
    r *= -1.0;
    r.axpy(s.a, u);
    ScalarField defect = rhs - r;
    u += transform_solve(defect.values());
    res = helmholtz_residual(u, rhs, s.a, s.d);
  }
  ++s.count;
  if (res > s.max_res) s.max_res = res;
  if (!(res <= s.tol)) {
    throw SolverError("Helmholtz residual " + std::to_string(res) + " exceeds tolerance " +
                      std::to_string(s.tol));
  }
  return u;
}

const GridSpec& HelmholtzSolver::grid() const { return impl_->grid; }
double HelmholtzSolver::absorption() const { return impl_->a; }
double HelmholtzSolver::diffusion() const { return impl_->d; }
double HelmholtzSolver::tolerance() const { return impl_->tol; }
double HelmholtzSolver::max_residual() const { return impl_->max_res; }
long HelmholtzSolver::solves() const { return impl_->count; }

ScalarField helmholtz_solve(const ScalarField& rhs, double absorption, double diffusion,
                            double tolerance) {
  HelmholtzSolver solver(rhs.grid(), absorption, diffusion, tolerance);
  return solver.solve(rhs);
}

double helmholtz_residual(const ScalarField& u, const ScalarField& rhs, double absorption,
                          double diffusion) {
  require_same_grid(u, rhs);
  ScalarField r = apply_laplacian(u, diffusion);
  r *= -1.0;
  r.axpy(absorption, u);
  r -= rhs;
  const double rn = norm(r, NormKind::L2);
  const double bn = norm(rhs, NormKind::L2);
  return bn > 0.0 ? rn / bn : rn;
}

}  // namespace rdsir
