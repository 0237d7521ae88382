#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rdsir/diagnostics.hpp"
#include "rdsir/error.hpp"

using namespace rdsir;

TEST_CASE("fractions on simple states") {
  GridSpec g{-5, 5, -5, 5, 10, 10};
  EpidemicState u(g);
  u[Compartment::S] = ScalarField(g, 1.0);
  CHECK(infected_fraction(u) == 0.0);
  CHECK(noncompliant_fraction(u) == 0.0);

  for (auto& f : u.fields) f = ScalarField(g, 0.4);
  CHECK(infected_fraction(u) == doctest::Approx(1.0 / 3.0));
  CHECK(noncompliant_fraction(u) == doctest::Approx(0.5));

  EpidemicState n(g);
  n[Compartment::Ss] = ScalarField(g, 0.1);
  n[Compartment::Rs] = ScalarField(g, 0.2);
  CHECK(noncompliant_fraction(n) == doctest::Approx(1.0));
}

TEST_CASE("seeding recipe fractions") {
  GridSpec g{-5, 5, -5, 5, 32, 32};
  oracle::Rng rng(1);
  EpidemicState u(g);
  ScalarField s0 = oracle::random_field(g, rng, 0.1, 1.0);
  ScalarField i0 = 0.01 * s0;
  u[Compartment::S] = s0;
  u[Compartment::I] = i0;
  u[Compartment::Ss] = 0.05 * s0;
  u[Compartment::Is] = 0.05 * i0;
  CHECK(infected_fraction(u) == doctest::Approx(0.01 * 1.05 / (1.01 * 1.05)).epsilon(1e-12));
  CHECK(std::abs(infected_fraction(u) - 0.009901) < 1e-6);
  CHECK(noncompliant_fraction(u) == doctest::Approx(1.0 / 21.0).epsilon(1e-12));
}

TEST_CASE("fraction complement identity") {
  GridSpec g{-5, 5, -5, 5, 9, 9};
  oracle::Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    EpidemicState u(g);
    for (auto& f : u.fields) f = oracle::random_field(g, rng, 0, 1);
    EpidemicState rest = u;
    rest[Compartment::I] = ScalarField(g);
    rest[Compartment::Is] = ScalarField(g);
    const double rest_frac = total_population(rest) / total_population(u);
    CHECK(infected_fraction(u) + rest_frac == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(infected_fraction(u) >= 0.0);
    CHECK(noncompliant_fraction(u) <= 1.0 + 1e-12);
  }
}

TEST_CASE("zero population") {
  GridSpec g{-5, 5, -5, 5, 4, 4};
  EpidemicState z(g);
  CHECK_THROWS_AS(infected_fraction(z), InvalidArgument);
  CHECK_THROWS_AS(noncompliant_fraction(z), InvalidArgument);
  SeriesRecord r = make_record(z, 0.0, 0.0, 0.1);
  CHECK(r.infected_fraction == 0.0);
  CHECK(r.bound_gap == 0.0);
}

TEST_CASE("mass bound") {
  CHECK(mass_bound(1e9, 0.0, 0.02 * 100, 0.001) == doctest::Approx(2000.0));
  std::vector<std::pair<double, double>> zero{{0, 0}, {1, 0}, {10, 0}};
  for (double gap : mass_bound_gap(zero, 0.0, 0.0, 0.5)) CHECK(gap == 0.0);

  // exact solution of N' = b_l1 - delta N sits on the bound only at the asymptote
  const double n0 = 3.0, b_l1 = 2.0, delta = 0.2;
  std::vector<std::pair<double, double>> exact;
  for (double t : {0.0, 1.0, 5.0, 50.0}) {
    exact.emplace_back(t, b_l1 / delta + (n0 - b_l1 / delta) * std::exp(-delta * t));
  }
  auto gaps = mass_bound_gap(exact, n0, b_l1, delta);
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const double t = exact[k].first;
    CHECK(gaps[k] == doctest::Approx(b_l1 / delta * std::exp(-delta * t)).epsilon(1e-12));
    CHECK(gaps[k] >= 0.0);
  }
  // starting at the asymptote the trajectory is constant and the gap is N0 e^{-delta t}
  const double n_star = b_l1 / delta;
  std::vector<std::pair<double, double>> flat{{0.0, n_star}, {7.0, n_star}};
  auto g2 = mass_bound_gap(flat, n_star, b_l1, delta);
  CHECK(g2[1] == doctest::Approx(n_star * std::exp(-delta * 7.0)));
  CHECK_THROWS_AS(mass_bound(0.0, 1.0, 1.0, 0.0), InvalidArgument);
  CHECK(mass_bound_tolerance(10.0, 0.02 * 100, 0.001) == doctest::Approx(2e-3));
}

TEST_CASE("record fields") {
  GridSpec g{-5, 5, -5, 5, 4, 4};
  EpidemicState u(g);
  u[Compartment::S] = ScalarField(g, 1.0);
  u[Compartment::R](0, 0) = -1e-12;
  u.time = 2.0;
  SeriesRecord r = make_record(u, 100.0, 2.0, 0.001);
  CHECK(r.time == 2.0);
  CHECK(r.total_mass == doctest::Approx(100.0));
  CHECK(r.min_value == -1e-12);
  CHECK(r.bound_gap == doctest::Approx(100.0 * std::exp(-0.002) + 2000.0 - r.total_mass));
}
