#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "rdsir/grid.hpp"
#include "rdsir/model.hpp"
#include "rdsir/stepper.hpp"

namespace rdsir {

struct Point2 {
  double x{0.0};
  double y{0.0};
  bool operator==(const Point2&) const = default;
};

struct GaussianBump {
  Point2 center;
  double amplitude{1.0};
  double decay{1.0};
  bool operator==(const GaussianBump&) const = default;
};

enum class IcKind { single_gaussian, four_gaussians, uniform, file };
enum class InfectedSeed { gaussian, proportional };

std::string_view ic_kind_name(IcKind k);
std::string_view infected_seed_name(InfectedSeed s);

/**
 * Initial-condition recipe. S0 comes from `kind`; I0 is either a separate
 * bump or `infected_ratio * S0`; the noncompliant seeds are
 * S0* = f S0 and I0* = f I0 with f = noncompliant_seed_fraction.
 * Recovered compartments start at zero. For `file`, all six compartments
 * are read from snapshot CSVs and the seeding rules are ignored.
 */
struct InitialCondition {
  IcKind kind{IcKind::single_gaussian};
  std::vector<GaussianBump> bumps{GaussianBump{}};  // 1 for single, 4 for four_gaussians
  double level{0.0};                                 // uniform
  std::string file;  // path pattern with "{c}" standing for the compartment name
  InfectedSeed infected_seed{InfectedSeed::proportional};
  GaussianBump infected_bump{};
  double infected_ratio{0.01};
  double noncompliant_seed_fraction{0.05};

  bool operator==(const InitialCondition&) const = default;
};

struct ScenarioConfig {
  std::string label{"custom"};
  GridSpec grid{};
  Rates rates{};
  double birth{0.02};  // spatially constant b
  StepperConfig stepper{};
  InitialCondition ic{};

  ModelParams model_params() const;
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// amplitude * exp(-decay |x - center|^2) at the cell centers.
ScalarField gaussian_field(const GridSpec& grid, Point2 center, double amplitude, double decay);

/// True when the bump center lies outside the grid's rectangle (allowed, the
/// caller may want to warn).
bool center_outside(const GridSpec& grid, Point2 center);

EpidemicState build_initial_state(const ScenarioConfig& cfg);

inline constexpr std::array<std::string_view, 6> kPresetNames{"fig1", "fig3", "fig4",
                                                              "fig5", "fig6", "basic_sir"};

/// Throws InvalidArgument for an unknown name.
ScenarioConfig preset(std::string_view name);

/// Parses the "key = value" scenario format; throws ParseError.
ScenarioConfig parse_scenario(std::string_view text);

/// Writes every key explicitly, full precision; parse_scenario inverts it.
std::string serialize_scenario(const ScenarioConfig& cfg);

/// Applies one "key = value" assignment to an existing config (used for CLI
/// overrides and sweeps). Throws ParseError with line 0.
void apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// 64-bit FNV-1a of the serialized config, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

}  // namespace rdsir
