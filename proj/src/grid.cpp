#include "hylos/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "hylos/error.hpp"

namespace hylos {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid Grid::make(int dim, std::span<const double> lengths, std::span<const std::size_t> counts) {
  require(dim >= 1 && dim <= 3, ErrorCode::invalid_argument, "grid dimension must be 1, 2 or 3");
  require(lengths.size() >= static_cast<std::size_t>(dim) && counts.size() >= static_cast<std::size_t>(dim),
          ErrorCode::invalid_argument, "grid needs one length and one count per axis");
  Grid g;
  g.dim_ = dim;
  g.size_ = 1;
  for (int d = 0; d < dim; ++d) {
    require(std::isfinite(lengths[d]) && lengths[d] > 0.0, ErrorCode::invalid_argument,
            "grid length must be positive on axis " + std::to_string(d + 1));
    require(is_power_of_two(counts[d]) && counts[d] >= 8, ErrorCode::invalid_argument,
            "grid count must be a power of two >= 8 on axis " + std::to_string(d + 1) + " (got " +
                std::to_string(counts[d]) + ")");
    g.lengths_[d] = lengths[d];
    g.counts_[d] = counts[d];
    g.size_ *= counts[d];
  }
  return g;
}

double Grid::min_spacing() const {
  double h = spacing(0);
  for (int d = 1; d < dim_; ++d) h = std::min(h, spacing(d));
  return h;
}

double Grid::volume_element() const {
  double dv = 1.0;
  for (int d = 0; d < dim_; ++d) dv *= spacing(d);
  return dv;
}

double Grid::volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= lengths_[d];
  return v;
}

std::array<std::size_t, 3> Grid::indices(std::size_t node) const {
  std::array<std::size_t, 3> idx{0, 0, 0};
  idx[0] = node % counts_[0];
  node /= counts_[0];
  idx[1] = node % counts_[1];
  idx[2] = node / counts_[1];
  return idx;
}

Point Grid::position(std::size_t node) const {
  const auto idx = indices(node);
  Point x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) x[d] = coordinate(d, idx[d]);
  return x;
}

bool Grid::contains(const Point& x) const {
  for (int d = 0; d < dim_; ++d) {
    if (!(x[d] >= -0.5 * lengths_[d] && x[d] <= 0.5 * lengths_[d])) return false;
  }
  for (int d = dim_; d < 3; ++d) {
    if (x[d] != 0.0) return false;
  }
  return true;
}

bool Grid::on_boundary(std::size_t node) const {
  const auto idx = indices(node);
  for (int d = 0; d < dim_; ++d) {
    if (idx[d] == 0 || idx[d] + 1 == counts_[d]) return true;
  }
  return false;
}

double Grid::wavenumber(int axis, std::size_t j) const {
  const auto n = static_cast<long long>(counts_[axis]);
  long long m = static_cast<long long>(j);
  if (m >= n / 2) m -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(m) / lengths_[axis];
}

ComplexField::ComplexField(const Grid& grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(), ErrorCode::invalid_argument, "field value count does not match grid");
}

bool ComplexField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double ComplexField::max_abs() const {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexField::boundary_leakage() const {
  const double peak = max_abs();
  if (peak == 0.0) return 0.0;
  double edge = 0.0;
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (grid_.on_boundary(n)) edge = std::max(edge, std::abs(values_[n]));
  }
  return edge / peak;
}

ComplexField& ComplexField::operator*=(cplx s) {
  for (auto& z : values_) z *= s;
  return *this;
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  require(o.grid_ == grid_, ErrorCode::invalid_argument, "fields live on different grids");
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += o.values_[n];
  return *this;
}

ComplexField operator*(ComplexField f, cplx s) { return f *= s; }
ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) {
  a += b * cplx{-1.0, 0.0};
  return a;
}

double integrate(std::span<const double> density, const Grid& grid) {
  require(density.size() == grid.size(), ErrorCode::invalid_argument, "density size does not match grid");
  double sum = 0.0;
  for (double v : density) {
    require(std::isfinite(v), ErrorCode::numerical_failure, "non-finite sample in integrand");
    sum += v;
  }
  return sum * grid.volume_element();
}

namespace {

bool is_nyquist(const Grid& grid, int axis, std::size_t j) {
  return grid.count(axis) % 2 == 0 && j == grid.count(axis) / 2;
}

void require_finite(const ComplexField& f) {
  require(f.all_finite(), ErrorCode::numerical_failure, "field contains non-finite samples");
}

}  // namespace

std::array<ComplexField, 3> gradient(const ComplexField& field) {
  require_finite(field);
  const Grid& g = field.grid();
  std::vector<cplx> hat(field.values().begin(), field.values().end());
  detail::fft_forward(g, hat);
  std::array<ComplexField, 3> out{ComplexField(g), ComplexField(g), ComplexField(g)};
  for (int d = 0; d < g.dim(); ++d) {
    auto vals = out[d].values();
    detail::for_each_mode(g, [&](std::size_t n, const Point& k, const std::array<std::size_t, 3>& idx) {
      vals[n] = is_nyquist(g, d, idx[d]) ? cplx{} : cplx{0.0, k[d]} * hat[n];
    });
    detail::fft_backward(g, vals);
  }
  return out;
}

ComplexField laplacian(const ComplexField& field) {
  require_finite(field);
  const Grid& g = field.grid();
  ComplexField out(field);
  auto vals = out.values();
  detail::fft_forward(g, vals);
  detail::for_each_mode(g, [&](std::size_t n, const Point& k, const std::array<std::size_t, 3>&) {
    vals[n] *= -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  });
  detail::fft_backward(g, vals);
  return out;
}

RealField divergence(const std::array<RealField, 3>& components, const Grid& grid) {
  std::vector<cplx> acc(grid.size(), cplx{});
  for (int d = 0; d < grid.dim(); ++d) {
    require(components[d].size() == grid.size(), ErrorCode::invalid_argument, "divergence component size mismatch");
    std::vector<cplx> hat(components[d].begin(), components[d].end());
    detail::fft_forward(grid, hat);
    detail::for_each_mode(grid, [&](std::size_t n, const Point& k, const std::array<std::size_t, 3>& idx) {
      if (!is_nyquist(grid, d, idx[d])) acc[n] += cplx{0.0, k[d]} * hat[n];
    });
  }
  detail::fft_backward(grid, acc);
  RealField out(grid.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = acc[n].real();
  return out;
}

ComplexField translate(const ComplexField& field, const Point& shift) {
  require_finite(field);
  const Grid& g = field.grid();
  ComplexField out(field);
  auto vals = out.values();
  detail::fft_forward(g, vals);
  detail::for_each_mode(g, [&](std::size_t n, const Point& k, const std::array<std::size_t, 3>&) {
    const double phase = -(k[0] * shift[0] + k[1] * shift[1] + k[2] * shift[2]);
    vals[n] *= std::polar(1.0, phase);
  });
  detail::fft_backward(g, vals);
  return out;
}

SpectralInterpolator::SpectralInterpolator(const ComplexField& field)
    : grid_(field.grid()), coeffs_(field.values().begin(), field.values().end()) {
  detail::fft_forward(grid_, coeffs_);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& c : coeffs_) c *= scale;
}

cplx SpectralInterpolator::operator()(const Point& x) const {
  // Separable evaluation: per-axis basis values, Nyquist modes as cosines.
  std::array<std::vector<cplx>, 3> basis;
  for (int d = 0; d < 3; ++d) {
    if (d >= grid_.dim()) {
      basis[d].assign(1, cplx{1.0, 0.0});
      continue;
    }
    const std::size_t n = grid_.count(d);
    basis[d].resize(n);
    const double offset = x[d] + 0.5 * grid_.length(d);
    for (std::size_t j = 0; j < n; ++j) {
      const double arg = grid_.wavenumber(d, j) * offset;
      basis[d][j] = is_nyquist(grid_, d, j) ? cplx{std::cos(arg), 0.0} : std::polar(1.0, arg);
    }
  }
  cplx sum{};
  std::size_t node = 0;
  for (std::size_t k = 0; k < basis[2].size(); ++k) {
    for (std::size_t j = 0; j < basis[1].size(); ++j) {
      const cplx bjk = basis[1][j] * basis[2][k];
      cplx row{};
      for (std::size_t i = 0; i < basis[0].size(); ++i, ++node) row += coeffs_[node] * basis[0][i];
      sum += row * bjk;
    }
  }
  return sum;
}

PolarFields polar_decompose(const ComplexField& field, double phase_floor) {
  require(phase_floor > 0.0, ErrorCode::invalid_argument, "phase_floor must be positive");
  require_finite(field);
  const Grid& g = field.grid();
  PolarFields out;
  out.amplitude.resize(g.size());
  out.phase.assign(g.size(), 0.0);
  std::vector<char> valid(g.size(), 0);
  std::deque<std::size_t> frontier;
  for (std::size_t n = 0; n < g.size(); ++n) {
    out.amplitude[n] = std::abs(field[n]);
    if (out.amplitude[n] >= phase_floor) {
      out.phase[n] = std::arg(field[n]);
      valid[n] = 1;
      frontier.push_back(n);
    }
  }
  require(!frontier.empty(), ErrorCode::degenerate_input, "phase undefined everywhere: field is below phase_floor");

  // Breadth-first fill from valid nodes, so each sub-floor node copies the
  // phase of its nearest valid neighbour in lattice distance.
  while (!frontier.empty()) {
    const std::size_t n = frontier.front();
    frontier.pop_front();
    const auto idx = g.indices(n);
    for (int d = 0; d < g.dim(); ++d) {
      for (int step : {-1, 1}) {
        auto nb = idx;
        const std::size_t cnt = g.count(d);
        nb[d] = step < 0 ? (idx[d] + cnt - 1) % cnt : (idx[d] + 1) % cnt;
        const std::size_t m = g.linear(nb);
        if (!valid[m]) {
          valid[m] = 1;
          out.phase[m] = out.phase[n];
          frontier.push_back(m);
        }
      }
    }
  }
  return out;
}

ComplexField polar_compose(const Grid& grid, const PolarFields& polar) {
  require(polar.amplitude.size() == grid.size() && polar.phase.size() == grid.size(), ErrorCode::invalid_argument,
          "polar fields do not match grid");
  ComplexField f(grid);
  for (std::size_t n = 0; n < grid.size(); ++n) f[n] = std::polar(polar.amplitude[n], polar.phase[n]);
  return f;
}

}  // namespace hylos
