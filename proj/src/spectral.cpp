#include "rdsir/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdsir/error.hpp"
#include "rdsir/helmholtz.hpp"

namespace rdsir {

const char* dfe_case_name(DfeCase which) {
  return which == DfeCase::compliant ? "compliant" : "noncompliant";
}

DfeCase dfe_case_for_xi(double xi) {
  if (xi == 1.0) return DfeCase::compliant;
  if (xi == 0.0) return DfeCase::noncompliant;
  throw InvalidArgument(
      "disease-free steady state requires xi = 0 or xi = 1; for xi in (0, 1) the coupled "
      "S/S* steady system has no existence guarantee (got xi = " + std::to_string(xi) + ")");
}

ScalarField steady_state(const ScalarField& birth, double rate, double diffusion, double tolerance) {
  if (!(rate > 0.0)) throw InvalidArgument("steady state needs a positive removal rate");
  if (!birth.all_finite() || birth.min() < 0.0) {
    throw InvalidArgument("steady state needs a finite, nonnegative birth field");
  }
  if (!(birth.max() > 0.0)) throw InvalidArgument("steady state needs a birth field that is not identically 0");
  ScalarField u = helmholtz_solve(birth, rate, diffusion, tolerance);
  if (!(u.min() > 0.0)) throw SolverError("steady state is not strictly positive");
  return u;
}

namespace {

double l2_normalize(ScalarField& f) {
  const GridSpec& g = f.grid();
  const double n = std::sqrt(dot(f, f) * g.cell_area());
  if (!(n > 0.0) || !std::isfinite(n)) throw SolverError("iterate collapsed to zero");
  f *= 1.0 / n;
  return n;
}

// Sign convention: principal eigenfunctions are returned positive.
void orient_positive(ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  if (s < 0.0) f *= -1.0;
}

ScalarField pointwise(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

// ||d Lap_h|| <= 4 d (1/hx^2 + 1/hy^2)
double laplacian_bound(const GridSpec& g, double d) {
  return 4.0 * d * (1.0 / (g.hx() * g.hx()) + 1.0 / (g.hy() * g.hy()));
}

double mean_of(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

// Collatz-Wielandt quotients (Gx)_i / x_i of a positive x; false if x is not positive.
bool quotient_bounds(const ScalarField& gx, const ScalarField& x, double& lo, double& hi) {
  if (!(x.min() > 0.0)) return false;
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double q = gx[k] / x[k];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return std::isfinite(lo) && std::isfinite(hi);
}

// Preconditioned CG for an SPD operator T with ||T|| <= op_norm. Stops on the
// backward error, which stays meaningful when T is nearly singular.
template <class Apply>
ScalarField pcg(const ScalarField& rhs, Apply&& apply, HelmholtzSolver& precond, double op_norm) {
  const double rhs_norm = std::sqrt(dot(rhs, rhs));
  ScalarField x = precond.solve(rhs);
  ScalarField r = rhs - apply(x);
  ScalarField z = precond.solve(r);
  ScalarField p = z;
  double rz = dot(r, z);
  auto backward = [&] { return std::sqrt(dot(r, r)) / (rhs_norm + op_norm * std::sqrt(dot(x, x))); };
  constexpr int kMaxInner = 5000;
  double err = backward();
  for (int it = 0; it < kMaxInner && err > 1e-14; ++it) {
    ScalarField q = apply(p);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) break;
    const double step = rz / pq;
    x.axpy(step, p);
    r.axpy(-step, q);
    err = backward();
    if (err <= 1e-14) break;
    z = precond.solve(r);
    const double rz_next = dot(r, z);
    p *= rz_next / rz;
    p += z;
    rz = rz_next;
  }
  if (!(err <= 1e-10)) {
    throw SolverError("inner CG solve of the shifted eigen operator did not converge");
  }
  return x;
}

double relative_change(double now, double before) {
  return std::abs(now - before) / std::max(1.0, std::abs(now));
}

}  // namespace

EigenResult principal_eigenpair(double diffusion, const ScalarField& potential,
                                const EigenOptions& options) {
  if (!(diffusion > 0.0)) throw InvalidArgument("eigenproblem diffusion must be > 0");
  if (!potential.all_finite()) throw InvalidArgument("potential holds non-finite values");
  const GridSpec& g = potential.grid();
  const double c_min = potential.min(), c_mean = mean_of(potential);
  const double lap = laplacian_bound(g, diffusion);

  ScalarField phi = options.initial ? *options.initial : ScalarField(g, 1.0);
  require_same_grid(phi, potential);
  l2_normalize(phi);

  auto apply_a = [&](const ScalarField& f) {
    ScalarField y = apply_laplacian(f, diffusion);
    for (std::size_t k = 0; k < f.size(); ++k) y[k] += potential[k] * f[k];
    return y;
  };

  // Upper bound for lambda_1 (Gershgorin), lowered to the quotient bound as
  // iterates improve; the gap keeps the shifted operator SPD.
  double shift = potential.max() + 1.0;
  double lambda_prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= options.max_iterations; ++it) {
    const ScalarField aphi = apply_a(phi);
    const double lambda = dot(phi, aphi) / dot(phi, phi);
    ScalarField r = aphi;
    r.axpy(-lambda, phi);
    const double res = norm(r, NormKind::L2);
    const bool small = res <= options.residual_tol * std::max(1.0, std::abs(lambda));
    if (small && (relative_change(lambda, lambda_prev) < options.eigen_tol || res == 0.0)) {
      EigenResult result;
      result.lambda = lambda;
      result.phi = std::move(phi);
      result.iterations = it;
      result.residual = res;
      return result;
    }
    lambda_prev = lambda;
    double lo = 0.0, hi = 0.0;
    if (quotient_bounds(aphi, phi, lo, hi)) {
      const double margin = std::max(hi - lo, 1e-9 * std::max(1.0, std::abs(hi)));
      shift = std::min(shift, hi + margin);
    }
    const double pre = std::max(shift - c_mean, 1e-3 * std::max(1.0, shift - c_min));
    HelmholtzSolver precond(g, pre, diffusion, 1e-8);
    auto apply_t = [&](const ScalarField& f) {
      ScalarField y = apply_a(f);
      y *= -1.0;
      y.axpy(shift, f);
      return y;
    };
    phi = pcg(phi, apply_t, precond, shift - c_min + lap);
    orient_positive(phi);
    l2_normalize(phi);
  }
  throw SolverError("principal eigenpair did not converge within " +
                    std::to_string(options.max_iterations) + " iterations");
}

R0Result reproduction_number(double diffusion, const ScalarField& infectivity, double absorption,
                             const EigenOptions& options, DfeCase which) {
  if (!(absorption > 0.0)) throw InvalidArgument("reproduction number needs absorption > 0");
  if (!infectivity.all_finite() || infectivity.min() < 0.0) {
    throw InvalidArgument("infectivity must be finite and nonnegative");
  }
  if (!(infectivity.max() > 0.0)) throw InvalidArgument("infectivity is identically 0");
  const GridSpec& g = infectivity.grid();
  const double k_max = infectivity.max(), k_mean = mean_of(infectivity);
  const double lap = laplacian_bound(g, diffusion);
  HelmholtzSolver b_solver(g, absorption, diffusion, 1e-10);

  auto apply_b = [&](const ScalarField& f) {
    ScalarField y = apply_laplacian(f, diffusion);
    y *= -1.0;
    y.axpy(absorption, f);
    return y;
  };

  ScalarField phi = options.initial ? *options.initial : ScalarField(g, 1.0);
  require_same_grid(phi, infectivity);
  l2_normalize(phi);

  // Noda iteration on G = B^{-1} K: (s - G)^{-1} x = (s B - K)^{-1} B x.
  // B >= absorption gives R <= max k / absorption.
  double shift = k_max / absorption * (1.0 + 1e-6);
  double r_prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= options.max_iterations; ++it) {
    const ScalarField k_phi = pointwise(infectivity, phi);
    const ScalarField b_phi = apply_b(phi);
    const double r = dot(phi, k_phi) / dot(phi, b_phi);
    ScalarField res_field = k_phi;
    res_field.axpy(-r, b_phi);
    const double res = norm(res_field, NormKind::L2);
    const bool small = res <= options.residual_tol * std::max(1.0, r);
    if (small && (relative_change(r, r_prev) < options.eigen_tol || res == 0.0)) {
      R0Result out;
      out.value = r;
      out.phi = std::move(phi);
      out.which = which;
      out.iterations = it;
      out.residual = res;
      return out;
    }
    r_prev = r;
    double lo = 0.0, hi = 0.0;
    if (quotient_bounds(b_solver.solve(k_phi), phi, lo, hi)) {
      const double margin = std::max(hi - lo, 1e-9 * std::max(hi, 1e-300));
      shift = std::min(shift, hi + margin);
    }
    const double pre = std::max(shift * absorption - k_mean, 1e-3 * shift * absorption);
    HelmholtzSolver precond(g, pre, shift * diffusion, 1e-8);
    auto apply_t = [&](const ScalarField& f) {
      ScalarField y = apply_b(f);
      y *= shift;
      for (std::size_t k = 0; k < f.size(); ++k) y[k] -= infectivity[k] * f[k];
      return y;
    };
    phi = pcg(b_phi, apply_t, precond, shift * (absorption + lap) + k_max);
    orient_positive(phi);
    l2_normalize(phi);
  }
  throw SolverError("reproduction number did not converge within " +
                    std::to_string(options.max_iterations) + " iterations");
}

DfeProblem dfe_problem(const ModelParams& p, DfeCase which, double tolerance) {
  p.validate();
  const Rates& r = p.rates;
  if (which == DfeCase::noncompliant) {
    ScalarField steady = steady_state(p.birth, r.nu + r.delta, p.diffusion(Compartment::Ss), tolerance);
    const double absorption = r.gamma + r.nu + r.delta;
    ScalarField infectivity = r.beta * steady;
    ScalarField potential = infectivity;
    for (double& v : potential.values()) v -= absorption;
    return {which, std::move(steady), std::move(potential), std::move(infectivity), absorption,
            p.diffusion(Compartment::Is)};
  }
  ScalarField steady = steady_state(p.birth, r.delta, p.diffusion(Compartment::S), tolerance);
  const double absorption = r.gamma + r.delta;
  const double keep = 1.0 - r.alpha;
  ScalarField infectivity = (r.beta * keep * keep) * steady;
  ScalarField potential = infectivity;
  for (double& v : potential.values()) v -= absorption;
  return {which, std::move(steady), std::move(potential), std::move(infectivity), absorption,
          p.diffusion(Compartment::I)};
}

LinearizationMatrices linearization_matrices(double s, double s_star, const Rates& r) {
  const double g = r.gamma, d = r.delta, mu = r.mu, nu = r.nu;
  // Only S and S* are nonzero at a disease-free state, so N* = S*.
  const double ns = s_star;
  LinearizationMatrices out{
      {{g + d + mu * ns, -nu}, {-mu * ns, g + d + nu}},
      {{-(mu * ns + d), nu - mu * s, 0.0, -mu * s},
       {mu * ns, mu * s - nu - d, 0.0, mu * s},
       {0.0, 0.0, -(mu * ns + d), nu},
       {0.0, 0.0, mu * ns, -(nu + d)}},
  };
  return out;
}

LinearizationReport dfe_linearization_check(const ScalarField& steady, const Rates& r,
                                            DfeCase which) {
  if (!(steady.min() > 0.0)) throw InvalidArgument("linearization check needs a positive steady field");
  LinearizationReport rep;
  rep.which = which;
  rep.v_max_real = -std::numeric_limits<double>::infinity();
  rep.m_max_real = -std::numeric_limits<double>::infinity();
  rep.v_min_offdiag = std::numeric_limits<double>::infinity();
  rep.m_min_offdiag = std::numeric_limits<double>::infinity();
  for (double value : steady.values()) {
    const double s = which == DfeCase::compliant ? value : 0.0;
    const double s_star = which == DfeCase::compliant ? 0.0 : value;
    const LinearizationMatrices lm = linearization_matrices(s, s_star, r);
    Eigen::Matrix2d neg_v;
    Eigen::Matrix4d m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) neg_v(i, j) = -lm.v[i][j];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = lm.m[i][j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (i != j) rep.v_min_offdiag = std::min(rep.v_min_offdiag, neg_v(i, j));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) rep.m_min_offdiag = std::min(rep.m_min_offdiag, m(i, j));
    rep.v_max_real = std::max(rep.v_max_real, neg_v.eigenvalues().real().maxCoeff());
    rep.m_max_real = std::max(rep.m_max_real, m.eigenvalues().real().maxCoeff());
  }
  rep.v_cooperative = rep.v_min_offdiag >= 0.0;
  rep.m_cooperative = rep.m_min_offdiag >= 0.0;
  return rep;
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

SignReport sign_consistency(const ModelParams& p, DfeCase which, double knife_edge,
                            const EigenOptions& options) {
  DfeProblem prob = dfe_problem(p, which);
  const EigenResult eig = principal_eigenpair(prob.diffusion, prob.potential, options);
  const R0Result r0 = reproduction_number(prob.diffusion, prob.infectivity, prob.absorption, options, which);
  SignReport rep;
  rep.which = which;
  rep.lambda = eig.lambda;
  rep.r0 = r0.value;
  rep.sign_lambda = sign_of(eig.lambda);
  rep.sign_r0_minus_one = sign_of(r0.value - 1.0);
  rep.agree = rep.sign_lambda == rep.sign_r0_minus_one;
  rep.required = std::abs(r0.value - 1.0) > knife_edge;
  rep.steady = std::move(prob.steady);
  rep.eigen_iterations = eig.iterations;
  rep.r0_iterations = r0.iterations;
  return rep;
}

}  // namespace rdsir
