#include "rdsir/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rdsir/error.hpp"

namespace rdsir {

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) {
    throw InvalidArgument("grid needs at least 2 cells per direction, got " + std::to_string(nx) +
                          "x" + std::to_string(ny));
  }
  if (!(xmax > xmin) || !(ymax > ymin)) {
    throw InvalidArgument("grid bounds must satisfy xmax > xmin and ymax > ymin");
  }
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax)) {
    throw InvalidArgument("grid bounds must be finite");
  }
}

ScalarField::ScalarField(const GridSpec& grid, double value) : grid_(grid) {
  grid_.validate();
  values_.assign(grid_.size(), value);
}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size()) {
    throw InvalidArgument("field has " + std::to_string(values_.size()) + " values, grid has " +
                          std::to_string(grid_.size()) + " cells");
  }
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += s * other.values_[k];
  return *this;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid()) || a.size() != b.size()) {
    throw InvalidArgument("fields live on different grids");
  }
}

ScalarField apply_laplacian(const ScalarField& f, double d) {
  if (!(d >= 0.0)) throw InvalidArgument("diffusion coefficient must be nonnegative");
  const GridSpec& g = f.grid();
  const int nx = g.nx;
  const int ny = g.ny;
  const double cx = d / (g.hx() * g.hx());
  const double cy = d / (g.hy() * g.hy());
  ScalarField out(g);
  auto in = f.values();
  auto res = out.values();
  for (int j = 0; j < ny; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * nx;
    const std::size_t below = static_cast<std::size_t>(j > 0 ? j - 1 : j) * nx;
    const std::size_t above = static_cast<std::size_t>(j < ny - 1 ? j + 1 : j) * nx;
    for (int i = 0; i < nx; ++i) {
      const double c = in[row + i];
      const double w = in[row + (i > 0 ? i - 1 : i)];
      const double e = in[row + (i < nx - 1 ? i + 1 : i)];
      const double s = in[below + i];
      const double n = in[above + i];
      res[row + i] = cx * ((w - c) + (e - c)) + cy * ((s - c) + (n - c));
    }
  }
  return out;
}

namespace {

double checked(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("field holds non-finite values");
  return v;
}

double raw_norm(std::span<const double> v, double cell_area, NormKind kind) {
  switch (kind) {
    case NormKind::L1: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s * cell_area;
    }
    case NormKind::L2: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s * cell_area);
    }
    case NormKind::Linf: {
      double m = 0.0;
      for (double x : v) {
        if (std::isnan(x)) return x;
        m = std::max(m, std::abs(x));
      }
      return m;
    }
  }
  return 0.0;
}

}  // namespace

double integrate(const ScalarField& f) {
  auto v = f.values();
  return checked(std::accumulate(v.begin(), v.end(), 0.0) * f.grid().cell_area());
}

double norm(const ScalarField& f, NormKind kind) {
  return checked(raw_norm(f.values(), f.grid().cell_area(), kind));
}

double dot(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  auto x = a.values();
  auto y = b.values();
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

}  // namespace rdsir
