#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "rdsir/grid.hpp"

namespace rdsir {

/// Compartments in storage order. The starred (noncompliant) ones carry an
/// `s` suffix.
enum class Compartment : std::size_t { S = 0, I, R, Ss, Is, Rs };

inline constexpr std::size_t kNumCompartments = 6;

inline constexpr std::array<Compartment, kNumCompartments> kAllCompartments{
    Compartment::S, Compartment::I, Compartment::R, Compartment::Ss, Compartment::Is, Compartment::Rs};

/// "S", "I", "R", "Ss", "Is", "Rs"
std::string_view compartment_name(Compartment c);

/// Scalar rates of the compliance-structured SIR system. The birth profile
/// is kept separately because it is a field.
struct Rates {
  double beta{0.0};   // infection rate
  double gamma{0.0};  // recovery rate
  double delta{0.0};  // death rate, > 0
  double alpha{0.0};  // prevention effectiveness in [0, 1]
  double mu{0.0};     // noncompliance transmission rate
  double nu{0.0};     // return-to-compliance rate
  double xi{1.0};     // fraction of births that are compliant
  // Diffusion coefficients in compartment order S, I, R, S*, I*, R*.
  std::array<double, kNumCompartments> diffusion{0.02, 0.02, 0.02, 0.02, 0.02, 0.02};

  bool operator==(const Rates&) const = default;
};

struct ModelParams {
  Rates rates;
  ScalarField birth;  // b(x) >= 0

  double diffusion(Compartment c) const { return rates.diffusion[static_cast<std::size_t>(c)]; }

  /// Throws InvalidArgument on any out-of-range parameter.
  void validate() const;
};

/// ModelParams with a spatially constant birth rate.
ModelParams make_params(const Rates& rates, const GridSpec& grid, double birth);

struct EpidemicState {
  std::array<ScalarField, kNumCompartments> fields;
  double time{0.0};

  explicit EpidemicState(const GridSpec& grid);
  EpidemicState() = default;

  const GridSpec& grid() const { return fields[0].grid(); }
  ScalarField& operator[](Compartment c) { return fields[static_cast<std::size_t>(c)]; }
  const ScalarField& operator[](Compartment c) const { return fields[static_cast<std::size_t>(c)]; }

  /// Largest |value| over all compartments and cells; +inf if any value is
  /// not finite.
  double max_abs() const;
  /// Most negative value (or smallest value) over all compartments and cells.
  double min_value() const;

  /// Throws InvalidArgument if compartments disagree on the grid or hold
  /// non-finite values.
  void validate() const;
};

using Tendencies = std::array<ScalarField, kNumCompartments>;

/// Per-cell tendencies of all non-diffusive terms.
Tendencies reaction_rhs(const EpidemicState& u, const ModelParams& p);

/// Pointwise version used by reaction_rhs; `b` is the local birth rate.
std::array<double, kNumCompartments> reaction_point(const std::array<double, kNumCompartments>& u,
                                                    const Rates& r, double b);

/// S* + I* + R*
ScalarField noncompliant_field(const EpidemicState& u);

/// Integral of the sum of all six compartments.
double total_population(const EpidemicState& u);

}  // namespace rdsir
