#pragma once

#include <cmath>
#include <vector>

#include "hylos/grid.hpp"

namespace hylos::testing {

inline Grid line(std::size_t n = 1024, double L = 40.0) {
  const double l[] = {L};
  const std::size_t c[] = {n};
  return Grid::make(1, l, c);
}

inline Grid cube(int dim, std::size_t n, double L) {
  const std::vector<double> l(static_cast<std::size_t>(dim), L);
  const std::vector<std::size_t> c(static_cast<std::size_t>(dim), n);
  return Grid::make(dim, l, c);
}

inline double sup_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

}  // namespace hylos::testing
