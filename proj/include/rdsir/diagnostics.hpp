#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rdsir/model.hpp"

namespace rdsir {

/// One row of series.csv.
struct SeriesRecord {
  double time{0.0};
  double total_mass{0.0};
  double infected_fraction{0.0};
  double noncompliant_fraction{0.0};
  double min_value{0.0};  // most negative cell over all compartments
  double bound_gap{0.0};  // mass bound minus total_mass

  bool operator==(const SeriesRecord&) const = default;
};

/// ||I + I*||_1 / ||S + I + R + S* + I* + R*||_1. Throws InvalidArgument
/// when the population vanishes.
double infected_fraction(const EpidemicState& u);

/// ||S* + I* + R*||_1 / ||S + I + R + S* + I* + R*||_1
double noncompliant_fraction(const EpidemicState& u);

/// N0 exp(-delta t) + b_l1 / delta
double mass_bound(double t, double n0, double b_l1, double delta);

/// Gap between the mass bound and the recorded mass at every (t, mass) pair.
std::vector<double> mass_bound_gap(std::span<const std::pair<double, double>> series, double n0,
                                   double b_l1, double delta);

/// Allowed negative slack on the bound gap.
double mass_bound_tolerance(double n0, double b_l1, double delta);

/// Fractions are recorded as 0 for the identically zero state.
SeriesRecord make_record(const EpidemicState& u, double n0, double b_l1, double delta);

}  // namespace rdsir
