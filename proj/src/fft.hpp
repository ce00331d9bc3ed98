#pragma once

#include <complex>
#include <span>

#include "hylos/grid.hpp"

namespace hylos::detail {

/// Unnormalized forward transform in place.
void fft_forward(const Grid& grid, std::span<cplx> data);
/// Inverse transform in place, including the 1/size normalization.
void fft_backward(const Grid& grid, std::span<cplx> data);

/// Calls fn(node, kvec) for every Fourier mode in storage order.
template <class Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
  std::size_t n = 0;
  const std::size_t n1 = grid.count(0), n2 = grid.count(1), n3 = grid.count(2);
  for (std::size_t k = 0; k < n3; ++k) {
    const double kz = grid.dim() > 2 ? grid.wavenumber(2, k) : 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
      const double ky = grid.dim() > 1 ? grid.wavenumber(1, j) : 0.0;
      for (std::size_t i = 0; i < n1; ++i, ++n) fn(n, Point{grid.wavenumber(0, i), ky, kz}, std::array<std::size_t, 3>{i, j, k});
    }
  }
}

}  // namespace hylos::detail
