#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rdsir/error.hpp"
#include "rdsir/model.hpp"

using namespace rdsir;

namespace {

Rates fig1_rates() {
  Rates r;
  r.beta = 3;
  r.gamma = 0.5;
  r.delta = 0.001;
  r.alpha = 0.5;
  r.mu = 1;
  r.nu = 1;
  r.xi = 0.05;
  return r;
}

Rates random_rates(oracle::Rng& rng) {
  Rates r;
  r.beta = rng.uniform(0, 5);
  r.gamma = rng.uniform(0, 2);
  r.delta = rng.uniform(1e-4, 0.5);
  r.alpha = rng.uniform(0, 1);
  r.mu = rng.uniform(0, 3);
  r.nu = rng.uniform(0, 3);
  r.xi = rng.uniform(0, 1);
  return r;
}

EpidemicState random_state(const GridSpec& g, oracle::Rng& rng) {
  EpidemicState u(g);
  for (auto& f : u.fields) f = oracle::random_field(g, rng, 0, 2);
  return u;
}

}  // namespace

TEST_CASE("point tendency with the single-centre parameters") {
  const auto t = reaction_point({1, 0.1, 0, 0.05, 0.005, 0}, fig1_rates(), 0.02);
  CHECK(t[0] == doctest::Approx(-0.0875).epsilon(1e-12));
  const auto ref = oracle::well_mixed_rhs({1, 0.1, 0, 0.05, 0.005, 0}, oracle::ode_rates(fig1_rates(), 0.02));
  for (int k = 0; k < 6; ++k) CHECK(t[k] == doctest::Approx(ref[k]).epsilon(1e-14));
}

TEST_CASE("zero state and zero source give zero tendencies") {
  GridSpec g{-5, 5, -5, 5, 6, 6};
  ModelParams p = make_params(fig1_rates(), g, 0.0);
  EpidemicState u(g);
  for (const auto& f : reaction_rhs(u, p)) CHECK(norm(f, NormKind::Linf) == 0.0);
}

TEST_CASE("no infection and no compliance exchange") {
  GridSpec g{-5, 5, -5, 5, 6, 6};
  oracle::Rng rng(5);
  Rates r = fig1_rates();
  r.mu = 0;
  r.nu = 0;
  ModelParams p = make_params(r, g, 0.02);
  EpidemicState u = random_state(g, rng);
  u[Compartment::I] = ScalarField(g);
  u[Compartment::Is] = ScalarField(g);
  Tendencies t = reaction_rhs(u, p);
  CHECK(norm(t[1], NormKind::Linf) == 0.0);
  CHECK(norm(t[4], NormKind::Linf) == 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(t[0][k] == doctest::Approx(r.xi * 0.02 - r.delta * u.fields[0][k]));
  }
}

TEST_CASE("random-state properties") {
  oracle::Rng rng(2024);
  GridSpec g{-5, 5, -5, 5, 5, 7};
  for (int trial = 0; trial < 50; ++trial) {
    Rates r = random_rates(rng);
    const double b = rng.uniform(0, 0.1);
    ModelParams p = make_params(r, g, b);
    EpidemicState u = random_state(g, rng);
    Tendencies t = reaction_rhs(u, p);
    for (std::size_t k = 0; k < g.size(); ++k) {
      double sum = 0.0, total = 0.0;
      for (std::size_t c = 0; c < 6; ++c) {
        sum += t[c][k];
        total += u.fields[c][k];
      }
      CHECK(sum == doctest::Approx(b - r.delta * total).epsilon(1e-12).scale(1.0));
    }

    // exchange symmetry
    Rates ex = r;
    ex.beta = ex.gamma = 0.0;
    ex.delta = 1e-300;  // validate() demands delta > 0; its contribution is below roundoff
    ModelParams pe = make_params(ex, g, 0.0);
    Tendencies te = reaction_rhs(u, pe);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(te[0][k] + te[3][k] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
      CHECK(te[1][k] + te[4][k] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
      CHECK(te[2][k] + te[5][k] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }

    // quasi-positivity: a compartment at zero never has a negative tendency
    for (std::size_t c = 0; c < 6; ++c) {
      EpidemicState z = u;
      z.fields[c] = ScalarField(g);
      Tendencies tz = reaction_rhs(z, p);
      CHECK(tz[c].min() >= 0.0);
    }

    // noncompliant field identity
    ScalarField all(g);
    for (const auto& f : u.fields) all += f;
    ScalarField compliant = u[Compartment::S] + u[Compartment::I] + u[Compartment::R];
    CHECK(norm(noncompliant_field(u) - (all - compliant), NormKind::Linf) < 1e-12);
  }
}

TEST_CASE("population totals") {
  GridSpec g;
  EpidemicState u(g);
  CHECK(total_population(u) == 0.0);
  for (auto& f : u.fields) f = ScalarField(g, 0.1);
  CHECK(total_population(u) == doctest::Approx(60.0));
  EpidemicState v(g);
  v[Compartment::Ss] = ScalarField(g, 0.05);
  v[Compartment::Is] = ScalarField(g, 0.005);
  ScalarField n = noncompliant_field(v);
  CHECK(n.min() == doctest::Approx(0.055));
  CHECK(n.max() == doctest::Approx(0.055));
}

TEST_CASE("parameter validation") {
  GridSpec g{-5, 5, -5, 5, 4, 4};
  Rates r = fig1_rates();
  r.delta = 0;
  CHECK_THROWS_AS(make_params(r, g, 0.02), InvalidArgument);
  r = fig1_rates();
  r.alpha = 1.5;
  CHECK_THROWS_AS(make_params(r, g, 0.02), InvalidArgument);
  r = fig1_rates();
  r.beta = -1;
  CHECK_THROWS_AS(make_params(r, g, 0.02), InvalidArgument);
  r = fig1_rates();
  r.diffusion[2] = 0;
  CHECK_THROWS_AS(make_params(r, g, 0.02), InvalidArgument);
  CHECK_THROWS_AS(make_params(fig1_rates(), g, -0.1), InvalidArgument);

  EpidemicState u(g);
  u[Compartment::R] = ScalarField(GridSpec{-5, 5, -5, 5, 4, 5});
  CHECK_THROWS_AS(u.validate(), InvalidArgument);
  EpidemicState w(g);
  w[Compartment::I](1, 1) = std::nan("");
  CHECK_THROWS_AS(w.validate(), InvalidArgument);
  CHECK(std::isinf(w.max_abs()));
}
