#pragma once

#include <functional>
#include <vector>

#include "hylos/models.hpp"

namespace hylos {

/// Area of the unit sphere S^{N-1} in R^N (2 for N = 1).
double sphere_area(int dim);

/// Sampled radial ground state u(r) on a uniform radial grid starting at r = 0.
struct RadialProfile {
  int dim = 1;
  Equation equation = Equation::ns;
  double omega = 0.0;
  double h_r = 1e-3;
  double u0 = 0.0;
  double sigma = 0.0;  ///< integral of u^2 over R^N
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;

  double r_max() const { return r.empty() ? 0.0 : r.back(); }
  /// Cubic (four-point Lagrange) interpolation; u is extended evenly through
  /// r = 0 and is 0 beyond the table.
  double value(double radius) const;
  double slope(double radius) const;
  /// Integral over R^N of f(r, u, u') for a radial integrand (trapezoid in r).
  double integrate(const std::function<double(double, double, double)>& f) const;
};

}  // namespace hylos
