#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rdsir/error.hpp"
#include "rdsir/spectral.hpp"

using namespace rdsir;

namespace {

Rates table_rates(double beta, double gamma, double alpha, double mu, double nu, double xi) {
  Rates r;
  r.beta = beta;
  r.gamma = gamma;
  r.delta = 0.001;
  r.alpha = alpha;
  r.mu = mu;
  r.nu = nu;
  r.xi = xi;
  return r;
}

const GridSpec kSmall{-5, 5, -5, 5, 16, 16};

}  // namespace

TEST_CASE("steady states with constant births") {
  GridSpec g{-5, 5, -5, 5, 32, 32};
  ScalarField b(g, 0.02);
  ScalarField s = steady_state(b, 0.101, 0.02);
  CHECK(s.min() == doctest::Approx(0.02 / 0.101).epsilon(1e-10));
  CHECK(s.max() == doctest::Approx(0.198020).epsilon(1e-6));
  ScalarField s2 = steady_state(b, 0.001, 0.02);
  CHECK(s2.min() == doctest::Approx(20.0).epsilon(1e-10));
  CHECK(s2.max() == doctest::Approx(20.0).epsilon(1e-10));
  CHECK_THROWS_AS(steady_state(ScalarField(g), 0.1, 0.02), InvalidArgument);
  CHECK_THROWS_AS(steady_state(b, 0.0, 0.02), InvalidArgument);
  ScalarField neg = b;
  neg(0, 0) = -1;
  CHECK_THROWS_AS(steady_state(neg, 0.1, 0.02), InvalidArgument);
}

TEST_CASE("steady state with a variable birth rate solves the elliptic problem") {
  oracle::Rng rng(31);
  ScalarField b = oracle::smooth_random_field(kSmall, rng, 0.05, 0.02);
  const double rate = 0.3, d = 0.5;
  ScalarField s = steady_state(b, rate, d);
  ScalarField res = apply_laplacian(s, d);
  res += b;
  res.axpy(-rate, s);
  CHECK(norm(res, NormKind::Linf) < 1e-10);
  CHECK(s.min() > 0.0);
}

TEST_CASE("principal eigenpair basics") {
  EigenResult r = principal_eigenpair(0.02, ScalarField(kSmall, -0.7));
  CHECK(r.lambda == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(r.phi.min() == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(r.phi.max() == doctest::Approx(0.1).epsilon(1e-10));
  EigenResult z = principal_eigenpair(1.0, ScalarField(kSmall));
  CHECK(std::abs(z.lambda) < 1e-12);
  CHECK_THROWS_AS(principal_eigenpair(0.0, ScalarField(kSmall)), InvalidArgument);
}

TEST_CASE("principal eigenpair matches the dense eigensolver") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const double d = rng.uniform(0.01, 1.0);
    ScalarField c = oracle::smooth_random_field(kSmall, rng, rng.uniform(-1, 1), 1.0);
    EigenResult r = principal_eigenpair(d, c);
    const double ref = oracle::dense_principal(kSmall, d, c);
    CHECK(std::abs(r.lambda - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
    CHECK(r.phi.min() > 0.0);
    CHECK(dot(r.phi, r.phi) * kSmall.cell_area() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("eigenvalue does not depend on the scale of the start vector") {
  oracle::Rng rng(8);
  ScalarField c = oracle::smooth_random_field(kSmall, rng, 0.2, 0.8);
  ScalarField start = oracle::random_field(kSmall, rng, 0.5, 1.5);
  EigenOptions o1, o2;
  o1.initial = start;
  o2.initial = 1234.5 * start;
  const double l1 = principal_eigenpair(0.1, c, o1).lambda;
  const double l2 = principal_eigenpair(0.1, c, o2).lambda;
  CHECK(std::abs(l1 - l2) <= 1e-8);
}

TEST_CASE("reproduction number basics and dense oracle") {
  CHECK(reproduction_number(0.3, ScalarField(kSmall, 2.0), 4.0).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(reproduction_number(0.3, ScalarField(kSmall), 1.0), InvalidArgument);
  CHECK_THROWS_AS(reproduction_number(0.3, ScalarField(kSmall, 1.0), 0.0), InvalidArgument);
  oracle::Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const double d = rng.uniform(0.01, 1.0), a = rng.uniform(0.2, 2.0);
    ScalarField k = oracle::smooth_random_field(kSmall, rng, 1.2, 1.0);
    for (double& v : k.values()) v = std::max(v, 0.0);
    R0Result r = reproduction_number(d, k, a);
    const double ref = oracle::dense_r0(kSmall, d, k, a);
    CHECK(std::abs(r.value - ref) <= 1e-8 * std::max(1.0, ref));
  }
}

TEST_CASE("reproduction number is monotone in its inputs") {
  oracle::Rng rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    ScalarField k = oracle::random_field(kSmall, rng, 0.1, 1.0);
    ScalarField bump = oracle::random_field(kSmall, rng, 0.0, 0.3);
    const double a = rng.uniform(0.5, 2.0);
    const double base = reproduction_number(0.1, k, a).value;
    CHECK(reproduction_number(0.1, k + bump, a).value >= base - 1e-10);
    CHECK(reproduction_number(0.1, k, a + 0.3).value <= base + 1e-10);
  }
}

TEST_CASE("closed forms in the constant-coefficient regimes") {
  ModelParams p3 = make_params(table_rates(0.1, 1, 0.1, 1, 0.1, 1), kSmall, 0.02);
  SignReport r3 = sign_consistency(p3, DfeCase::noncompliant);
  const double s_star = 0.02 / 0.101;
  CHECK(r3.r0 == doctest::Approx(0.1 * s_star / 1.101).epsilon(1e-10));
  CHECK(std::abs(r3.r0 - 0.01798) < 1e-5);
  CHECK(r3.lambda == doctest::Approx(0.1 * s_star - 1.101).epsilon(1e-10));
  CHECK(r3.agree);
  CHECK(r3.required);

  ModelParams p4 = make_params(table_rates(50, 1, 0.8, 1, 0.1, 0), kSmall, 0.02);
  SignReport r4 = sign_consistency(p4, DfeCase::noncompliant);
  CHECK(r4.r0 == doctest::Approx(50 * s_star / 1.101).epsilon(1e-10));
  CHECK(std::abs(r4.r0 - 8.993) < 1e-3);
  CHECK(r4.lambda == doctest::Approx(8.800).epsilon(1e-3));
  CHECK(r4.agree);

  SignReport c3 = sign_consistency(p3, DfeCase::compliant);
  CHECK(c3.r0 == doctest::Approx(0.1 * 0.81 * 20.0 / 1.001).epsilon(1e-10));
  CHECK(c3.lambda == doctest::Approx(0.1 * 0.81 * 20.0 - 1.001).epsilon(1e-10));
  CHECK(c3.agree);
}

TEST_CASE("knife edge") {
  Rates r = table_rates(0, 1, 0.1, 1, 0.1, 0);
  const double s_star = 0.02 / 0.101;
  r.beta = (r.gamma + r.nu + r.delta) / s_star;
  SignReport rep = sign_consistency(make_params(r, kSmall, 0.02), DfeCase::noncompliant);
  CHECK(std::abs(rep.r0 - 1.0) < 1e-10);
  CHECK(std::abs(rep.lambda) < 1e-10);
  CHECK_FALSE(rep.required);
}

TEST_CASE("equilibrium case selection") {
  CHECK(dfe_case_for_xi(1.0) == DfeCase::compliant);
  CHECK(dfe_case_for_xi(0.0) == DfeCase::noncompliant);
  CHECK_THROWS_AS(dfe_case_for_xi(0.05), InvalidArgument);
}

TEST_CASE("linearization matrices") {
  Rates r = table_rates(1, 0.5, 0.3, 2.0, 0.7, 0);
  auto m = linearization_matrices(0.0, 0.4, r);
  CHECK(m.v[0][0] == doctest::Approx(0.5 + 0.001 + 2.0 * 0.4));
  CHECK(m.v[0][1] == doctest::Approx(-0.7));
  CHECK(m.v[1][0] == doctest::Approx(-2.0 * 0.4));
  CHECK(m.v[1][1] == doctest::Approx(0.5 + 0.001 + 0.7));
  CHECK(m.m[0][0] == doctest::Approx(-(0.8 + 0.001)));
  CHECK(m.m[0][1] == doctest::Approx(0.7));
  CHECK(m.m[1][0] == doctest::Approx(0.8));
  CHECK(m.m[1][1] == doctest::Approx(-0.701));
  CHECK(m.m[3][3] == doctest::Approx(-0.701));

  // Compliant point: derivative of mu S N* with respect to S* and R*.
  auto c = linearization_matrices(3.0, 0.0, r);
  CHECK(c.m[0][1] == doctest::Approx(0.7 - 6.0));
  CHECK(c.m[0][3] == doctest::Approx(-6.0));
  CHECK(c.m[1][1] == doctest::Approx(6.0 - 0.7 - 0.001));
}

TEST_CASE("linearization check on decoupled and noncompliant states") {
  Rates r = table_rates(1, 0.5, 0.3, 0.0, 0.0, 0);
  LinearizationReport dec = dfe_linearization_check(ScalarField(kSmall, 0.3), r, DfeCase::noncompliant);
  CHECK(dec.v_max_real == doctest::Approx(-(0.5 + 0.001)));
  CHECK(dec.v_cooperative);

  Rates r3 = table_rates(0.1, 1, 0.1, 1, 0.1, 1);
  LinearizationReport nc = dfe_linearization_check(ScalarField(kSmall, 0.02 / 0.101), r3, DfeCase::noncompliant);
  CHECK(nc.v_max_real < 0.0);
  CHECK(nc.m_max_real < 0.0);
  CHECK(nc.passed());

  oracle::Rng rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    Rates rr = table_rates(1, rng.uniform(0, 2), 0.2, rng.uniform(0, 3), rng.uniform(0, 3), 0);
    ScalarField steady = oracle::random_field(kSmall, rng, 0.01, 5.0);
    LinearizationReport rep = dfe_linearization_check(steady, rr, DfeCase::noncompliant);
    CHECK(rep.v_cooperative);
    CHECK(rep.v_min_offdiag >= 0.0);
  }
}

TEST_CASE("compliant state with noncompliance transmission") {
  Rates r = table_rates(0.1, 1, 0.1, 1, 0.1, 1);
  LinearizationReport rep = dfe_linearization_check(ScalarField(kSmall, 20.0), r, DfeCase::compliant);
  CHECK(rep.v_cooperative);
  CHECK_FALSE(rep.m_cooperative);
  CHECK(rep.m_max_real > 0.0);
  // -mu S couples S to R*, so any mu > 0 breaks cooperativity
  Rates small_mu = r;
  small_mu.mu = 0.001;
  LinearizationReport weak = dfe_linearization_check(ScalarField(kSmall, 20.0), small_mu, DfeCase::compliant);
  CHECK_FALSE(weak.m_cooperative);
  CHECK(weak.m_max_real < 0.0);
  Rates no_mu = r;
  no_mu.mu = 0.0;
  CHECK(dfe_linearization_check(ScalarField(kSmall, 20.0), no_mu, DfeCase::compliant).passed());
}
