#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hylos {

using cplx = std::complex<double>;
using Point = std::array<double, 3>;

/// Periodic rectangular grid in dimension 1-3. Nodes along axis d sit at
/// -L_d/2 + j*h_d, j = 0..n_d-1. Storage is row-major with axis 1 fastest.
class Grid {
 public:
  static Grid make(int dim, std::span<const double> lengths, std::span<const std::size_t> counts);

  int dim() const { return dim_; }
  double length(int axis) const { return lengths_[axis]; }
  std::size_t count(int axis) const { return counts_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / static_cast<double>(counts_[axis]); }
  double min_spacing() const;
  std::size_t size() const { return size_; }
  double volume_element() const;
  double volume() const;

  double coordinate(int axis, std::size_t j) const {
    return -0.5 * lengths_[axis] + static_cast<double>(j) * spacing(axis);
  }
  /// Per-axis indices of a linear node index.
  std::array<std::size_t, 3> indices(std::size_t node) const;
  std::size_t linear(const std::array<std::size_t, 3>& idx) const {
    return idx[0] + counts_[0] * (idx[1] + counts_[1] * idx[2]);
  }
  Point position(std::size_t node) const;
  bool contains(const Point& x) const;
  bool on_boundary(std::size_t node) const;
  /// Signed wavenumber for Fourier index j on the given axis.
  double wavenumber(int axis, std::size_t j) const;

  bool operator==(const Grid&) const = default;

 private:
  int dim_ = 1;
  std::array<double, 3> lengths_{1.0, 1.0, 1.0};
  std::array<std::size_t, 3> counts_{1, 1, 1};
  std::size_t size_ = 1;
};

using RealField = std::vector<double>;

class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(const Grid& grid) : grid_(grid), values_(grid.size(), cplx{}) {}
  ComplexField(const Grid& grid, std::vector<cplx> values);

  template <class Fn>
  static ComplexField from_function(const Grid& grid, Fn&& fn) {
    ComplexField f(grid);
    for (std::size_t n = 0; n < grid.size(); ++n) f.values_[n] = fn(grid.position(n));
    return f;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<cplx> values() { return values_; }
  std::span<const cplx> values() const { return values_; }
  cplx& operator[](std::size_t n) { return values_[n]; }
  const cplx& operator[](std::size_t n) const { return values_[n]; }

  bool all_finite() const;
  double max_abs() const;
  /// max |psi| over boundary nodes divided by max |psi| (0 for the zero field).
  double boundary_leakage() const;

  ComplexField& operator*=(cplx s);
  ComplexField& operator+=(const ComplexField& o);

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

ComplexField operator*(ComplexField f, cplx s);
ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);

struct PolarFields {
  RealField amplitude;
  RealField phase;
};

/// Periodic trapezoid rule: node sum times the volume element.
double integrate(std::span<const double> density, const Grid& grid);

std::array<ComplexField, 3> gradient(const ComplexField& field);
ComplexField laplacian(const ComplexField& field);
/// Spectral divergence of a real vector field (components per axis).
RealField divergence(const std::array<RealField, 3>& components, const Grid& grid);
/// psi(x - shift) by exact Fourier-space phase shift.
ComplexField translate(const ComplexField& field, const Point& shift);
/// Trigonometric interpolation of a band-limited field at arbitrary points.
class SpectralInterpolator {
 public:
  explicit SpectralInterpolator(const ComplexField& field);
  cplx operator()(const Point& x) const;

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
};

PolarFields polar_decompose(const ComplexField& field, double phase_floor);
ComplexField polar_compose(const Grid& grid, const PolarFields& polar);

}  // namespace hylos
