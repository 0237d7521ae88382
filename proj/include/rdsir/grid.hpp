#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rdsir {

/**
 * Uniform cell-centered grid over [xmin, xmax] x [ymin, ymax].
 *
 * Cell (i, j) has its center at (xmin + (i + 1/2) hx, ymin + (j + 1/2) hy).
 * Storage everywhere in the library is row-major with x fastest:
 * index = j * nx + i.
 */
struct GridSpec {
  double xmin{-5.0};
  double xmax{5.0};
  double ymin{-5.0};
  double ymax{5.0};
  int nx{128};
  int ny{128};

  double hx() const { return (xmax - xmin) / nx; }
  double hy() const { return (ymax - ymin) / ny; }
  double x(int i) const { return xmin + (i + 0.5) * hx(); }
  double y(int j) const { return ymin + (j + 0.5) * hy(); }
  double cell_area() const { return hx() * hy(); }
  double area() const { return (xmax - xmin) * (ymax - ymin); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }

  /// Throws InvalidArgument unless nx, ny >= 2 and the bounds are ordered.
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

/// One density sampled at the cell centers of a grid.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& grid, double value = 0.0);
  ScalarField(const GridSpec& grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  double min() const;
  double max() const;
  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  /// this += s * other
  ScalarField& axpy(double s, const ScalarField& other);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

 private:
  GridSpec grid_{};
  std::vector<double> values_;
};

enum class NormKind { L1, L2, Linf };

/// Throws InvalidArgument when the two fields live on different grids.
void require_same_grid(const ScalarField& a, const ScalarField& b);

/**
 * d * (5-point Laplacian of f) with zero-flux closure: ghost values mirror the
 * adjacent boundary cell, so boundary faces carry no flux and the midpoint
 * integral of the result vanishes.
 */
ScalarField apply_laplacian(const ScalarField& f, double d);

/// Midpoint quadrature: sum of f * hx * hy.
double integrate(const ScalarField& f);

double norm(const ScalarField& f, NormKind kind);

/// Euclidean dot product of the raw cell values (no quadrature weight).
double dot(const ScalarField& a, const ScalarField& b);

}  // namespace rdsir
