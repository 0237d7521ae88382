#include "rdsir/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rdsir/error.hpp"

namespace rdsir {

std::string_view compartment_name(Compartment c) {
  switch (c) {
    case Compartment::S: return "S";
    case Compartment::I: return "I";
    case Compartment::R: return "R";
    case Compartment::Ss: return "Ss";
    case Compartment::Is: return "Is";
    case Compartment::Rs: return "Rs";
  }
  return "?";
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

void ModelParams::validate() const {
  const Rates& r = rates;
  require(std::isfinite(r.beta) && r.beta >= 0.0, "beta must be >= 0");
  require(std::isfinite(r.gamma) && r.gamma >= 0.0, "gamma must be >= 0");
  require(std::isfinite(r.delta) && r.delta > 0.0, "delta must be > 0");
  require(r.alpha >= 0.0 && r.alpha <= 1.0, "alpha must lie in [0, 1]");
  require(std::isfinite(r.mu) && r.mu >= 0.0, "mu must be >= 0");
  require(std::isfinite(r.nu) && r.nu >= 0.0, "nu must be >= 0");
  require(r.xi >= 0.0 && r.xi <= 1.0, "xi must lie in [0, 1]");
  for (Compartment c : kAllCompartments) {
    const double d = diffusion(c);
    require(std::isfinite(d) && d > 0.0,
            "diffusion coefficient of " + std::string(compartment_name(c)) + " must be > 0");
  }
  require(birth.size() > 0, "birth field is empty");
  require(birth.all_finite() && birth.min() >= 0.0, "birth rate must be finite and >= 0 everywhere");
}

ModelParams make_params(const Rates& rates, const GridSpec& grid, double birth) {
  ModelParams p{rates, ScalarField(grid, birth)};
  p.validate();
  return p;
}

EpidemicState::EpidemicState(const GridSpec& grid) {
  for (auto& f : fields) f = ScalarField(grid);
}

double EpidemicState::max_abs() const {
  double m = 0.0;
  for (const auto& f : fields) {
    for (double v : f.values()) {
      if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

double EpidemicState::min_value() const {
  double m = fields[0].min();
  for (const auto& f : fields) m = std::min(m, f.min());
  return m;
}

void EpidemicState::validate() const {
  for (const auto& f : fields) {
    require_same_grid(fields[0], f);
    if (!f.all_finite()) throw InvalidArgument("state holds non-finite values");
  }
}

std::array<double, kNumCompartments> reaction_point(const std::array<double, kNumCompartments>& u,
                                                    const Rates& r, double b) {
  const double S = u[0], I = u[1], R = u[2], Ss = u[3], Is = u[4], Rs = u[5];
  const double keep = 1.0 - r.alpha;
  const double force = keep * I + Is;  // effective infectious pressure
  const double Ns = Ss + Is + Rs;
  const double new_compliant = r.beta * keep * S * force;
  const double new_noncompliant = r.beta * Ss * force;
  return {
      r.xi * b - new_compliant - r.mu * S * Ns + r.nu * Ss - r.delta * S,
      new_compliant - r.gamma * I - r.mu * I * Ns + r.nu * Is - r.delta * I,
      r.gamma * I - r.mu * R * Ns + r.nu * Rs - r.delta * R,
      (1.0 - r.xi) * b - new_noncompliant + r.mu * S * Ns - r.nu * Ss - r.delta * Ss,
      new_noncompliant - r.gamma * Is + r.mu * I * Ns - r.nu * Is - r.delta * Is,
      r.gamma * Is + r.mu * R * Ns - r.nu * Rs - r.delta * Rs,
  };
}

Tendencies reaction_rhs(const EpidemicState& u, const ModelParams& p) {
  for (const auto& f : u.fields) require_same_grid(f, p.birth);
  const GridSpec& g = u.grid();
  Tendencies out;
  for (auto& f : out) f = ScalarField(g);
  const std::size_t n = g.size();
  std::array<double, kNumCompartments> local{};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < kNumCompartments; ++c) local[c] = u.fields[c][k];
    const auto tend = reaction_point(local, p.rates, p.birth[k]);
    for (std::size_t c = 0; c < kNumCompartments; ++c) out[c][k] = tend[c];
  }
  return out;
}

ScalarField noncompliant_field(const EpidemicState& u) {
  ScalarField n = u[Compartment::Ss];
  n += u[Compartment::Is];
  n += u[Compartment::Rs];
  return n;
}

double total_population(const EpidemicState& u) {
  double s = 0.0;
  for (const auto& f : u.fields) s += integrate(f);
  return s;
}

}  // namespace rdsir
