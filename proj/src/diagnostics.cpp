#include "rdsir/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "rdsir/error.hpp"

namespace rdsir {

namespace {

// L1 norm of a pointwise sum of compartments, without materializing it.
double l1_of_sum(const EpidemicState& u, std::initializer_list<Compartment> parts) {
  const GridSpec& g = u.grid();
  const std::size_t n = g.size();
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double v = 0.0;
    for (Compartment c : parts) v += u[c][k];
    s += std::abs(v);
  }
  return s * g.cell_area();
}

double total_l1(const EpidemicState& u) {
  const double total = l1_of_sum(u, {Compartment::S, Compartment::I, Compartment::R,
                                     Compartment::Ss, Compartment::Is, Compartment::Rs});
  if (!(total > 0.0)) throw InvalidArgument("fraction undefined for zero total population");
  return total;
}

}  // namespace

double infected_fraction(const EpidemicState& u) {
  const double total = total_l1(u);
  return l1_of_sum(u, {Compartment::I, Compartment::Is}) / total;
}

double noncompliant_fraction(const EpidemicState& u) {
  const double total = total_l1(u);
  return l1_of_sum(u, {Compartment::Ss, Compartment::Is, Compartment::Rs}) / total;
}

double mass_bound(double t, double n0, double b_l1, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be > 0");
  return n0 * std::exp(-delta * t) + b_l1 / delta;
}

std::vector<double> mass_bound_gap(std::span<const std::pair<double, double>> series, double n0,
                                   double b_l1, double delta) {
  std::vector<double> gaps;
  gaps.reserve(series.size());
  for (const auto& [t, mass] : series) gaps.push_back(mass_bound(t, n0, b_l1, delta) - mass);
  return gaps;
}

double mass_bound_tolerance(double n0, double b_l1, double delta) {
  // Relative to the asymptotic bound; falls back to N0 when there are no births.
  return 1e-6 * std::max(b_l1 / delta, n0);
}

SeriesRecord make_record(const EpidemicState& u, double n0, double b_l1, double delta) {
  SeriesRecord r;
  r.time = u.time;
  r.total_mass = total_population(u);
  if (r.total_mass != 0.0 || u.max_abs() > 0.0) {
    r.infected_fraction = infected_fraction(u);
    r.noncompliant_fraction = noncompliant_fraction(u);
  }
  r.min_value = u.min_value();
  r.bound_gap = mass_bound(u.time, n0, b_l1, delta) - r.total_mass;
  return r;
}

}  // namespace rdsir
