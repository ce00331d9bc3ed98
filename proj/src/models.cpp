#include "hylos/models.hpp"

#include <algorithm>
#include <cmath>

#include "hylos/error.hpp"

namespace hylos {

std::string to_string(Equation eq) { return eq == Equation::ns ? "NS" : "NKG"; }

std::string to_string(Family family) {
  switch (family) {
    case Family::power_focusing: return "power_focusing";
    case Family::double_power: return "double_power";
    case Family::saturating_intro: return "saturating_intro";
  }
  return "unknown";
}

Equation parse_equation(const std::string& s) {
  if (s == "NS" || s == "ns") return Equation::ns;
  if (s == "NKG" || s == "nkg") return Equation::nkg;
  fail(ErrorCode::invalid_argument, "unknown equation tag '" + s + "' (expected NS or NKG)");
}

Family parse_family(const std::string& s) {
  if (s == "power_focusing") return Family::power_focusing;
  if (s == "double_power") return Family::double_power;
  if (s == "saturating_intro") return Family::saturating_intro;
  fail(ErrorCode::invalid_argument, "unknown model family '" + s + "'");
}

NonlinearModel NonlinearModel::power_focusing(Equation eq, double a, double p, double c) {
  NonlinearModel m;
  m.equation_ = eq;
  m.family_ = Family::power_focusing;
  m.a_ = a;
  m.p_ = p;
  m.c_p_ = c;
  m.validate();
  return m;
}

NonlinearModel NonlinearModel::double_power(Equation eq, double a, double p, double q, double c_p, double c_q) {
  NonlinearModel m;
  m.equation_ = eq;
  m.family_ = Family::double_power;
  m.a_ = a;
  m.p_ = p;
  m.q_ = q;
  m.c_p_ = c_p;
  m.c_q_ = c_q;
  m.validate();
  require(q > p, ErrorCode::invalid_argument, "double_power requires q > p");
  return m;
}

NonlinearModel NonlinearModel::saturating_intro(Equation eq, double a) {
  NonlinearModel m;
  m.equation_ = eq;
  m.family_ = Family::saturating_intro;
  m.a_ = a;
  m.validate();
  return m;
}

void NonlinearModel::validate() const {
  require(std::isfinite(a_) && a_ >= 0.0, ErrorCode::invalid_argument, "quadratic coefficient a must be >= 0");
  require(std::isfinite(c_p_) && std::isfinite(c_q_), ErrorCode::invalid_argument, "model coefficients must be finite");
  if (family_ != Family::saturating_intro) {
    require(p_ > 2.0, ErrorCode::invalid_argument, "power p must exceed 2 so that N'(s)/s -> 0");
  }
  // N(0) = 0 and |N'(s)|/s -> 0.
  require(N(0.0) == 0.0, ErrorCode::invalid_argument, "N(0) must vanish");
  const double r4 = std::abs(N_prime(1e-4)) / 1e-4;
  const double r6 = std::abs(N_prime(1e-6)) / 1e-6;
  require(r6 <= r4 || r6 < 1e-8, ErrorCode::invalid_argument, "N'(s)/s does not vanish at the origin");
}

double NonlinearModel::N(double s) const {
  switch (family_) {
    case Family::power_focusing: return -(c_p_ / p_) * std::pow(s, p_);
    case Family::double_power: return -(c_p_ / p_) * std::pow(s, p_) + (c_q_ / q_) * std::pow(s, q_);
    case Family::saturating_intro: {
      // a (s - ln(1+s)) - a s^2/2, evaluated without cancellation for small s.
      if (s < 1e-3) return a_ * (-s * s * s / 3.0 + s * s * s * s / 4.0 - std::pow(s, 5) / 5.0);
      return a_ * (s - std::log1p(s) - 0.5 * s * s);
    }
  }
  return 0.0;
}

double NonlinearModel::N_prime(double s) const {
  switch (family_) {
    case Family::power_focusing: return -c_p_ * std::pow(s, p_ - 1.0);
    case Family::double_power: return -c_p_ * std::pow(s, p_ - 1.0) + c_q_ * std::pow(s, q_ - 1.0);
    case Family::saturating_intro: return -a_ * s * s / (1.0 + s);
  }
  return 0.0;
}

double NonlinearModel::W(double s) const {
  require(s >= 0.0, ErrorCode::invalid_argument, "W is evaluated at s = |psi| >= 0");
  return 0.5 * a_ * s * s + N(s);
}

double NonlinearModel::F_prime(double s) const { return a_ * s + N_prime(s); }

double NonlinearModel::F_prime_over_s(double s) const {
  if (s == 0.0) return a_;
  switch (family_) {
    case Family::power_focusing: return a_ - c_p_ * std::pow(s, p_ - 2.0);
    case Family::double_power: return a_ - c_p_ * std::pow(s, p_ - 2.0) + c_q_ * std::pow(s, q_ - 2.0);
    case Family::saturating_intro: return a_ / (1.0 + s);
  }
  return a_;
}

cplx NonlinearModel::W_prime(cplx z) const { return F_prime_over_s(std::abs(z)) * z; }

double NonlinearModel::rest_energy() const { return equation_ == Equation::ns ? 0.5 * a_ : std::sqrt(a_); }

void NonlinearModel::require_positive(double s_max, double step) const {
  for (double s = 0.0; s <= s_max; s += step) {
    require(W(s) >= 0.0, ErrorCode::invalid_argument, "W(s) < 0 at s = " + std::to_string(s) + " (positivity required)");
  }
}

double eval_W(const NonlinearModel& model, double s) { return model.W(s); }
cplx eval_Wprime_complex(const NonlinearModel& model, cplx z) { return model.W_prime(z); }
double rest_energy(const NonlinearModel& model) { return model.rest_energy(); }

std::optional<double> hylomorphy_witness(const NonlinearModel& model, double s_max, double step) {
  const auto n = static_cast<long>(std::floor(s_max / step));
  for (long i = 1; i <= n; ++i) {
    const double s = static_cast<double>(i) * step;
    if (model.N(s) < 0.0) return s;
  }
  return std::nullopt;
}

ExternalPotential ExternalPotential::harmonic(double kappa) {
  require(kappa >= 0.0, ErrorCode::invalid_argument, "harmonic potential needs kappa >= 0");
  ExternalPotential v;
  v.kind_ = HarmonicPotential{kappa};
  return v;
}

ExternalPotential ExternalPotential::sampled(const Grid& grid, RealField values) {
  require(values.size() == grid.size(), ErrorCode::invalid_argument, "sampled potential size mismatch");
  for (double x : values) require(std::isfinite(x) && x >= 0.0, ErrorCode::invalid_argument, "sampled potential must be finite and >= 0");
  ExternalPotential v;
  v.kind_ = SampledPotential{grid, std::move(values)};
  return v;
}

double ExternalPotential::sampled_value(const SampledPotential& s, Point x) const {
  // Multilinear interpolation with periodic wrap.
  const Grid& g = s.grid;
  std::array<std::size_t, 3> lo{0, 0, 0};
  std::array<double, 3> frac{0.0, 0.0, 0.0};
  for (int d = 0; d < g.dim(); ++d) {
    const double u = (x[d] + 0.5 * g.length(d)) / g.spacing(d);
    const double fl = std::floor(u);
    frac[d] = u - fl;
    const auto cnt = static_cast<long long>(g.count(d));
    lo[d] = static_cast<std::size_t>(((static_cast<long long>(fl) % cnt) + cnt) % cnt);
  }
  double acc = 0.0;
  const int corners = 1 << g.dim();
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    auto idx = lo;
    for (int d = 0; d < g.dim(); ++d) {
      const bool up = (c >> d) & 1;
      w *= up ? frac[d] : 1.0 - frac[d];
      if (up) idx[d] = (idx[d] + 1) % g.count(d);
    }
    acc += w * s.values[g.linear(idx)];
  }
  return acc;
}

double ExternalPotential::value(const Point& x) const {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZeroPotential>) {
          return 0.0;
        } else if constexpr (std::is_same_v<K, HarmonicPotential>) {
          return 0.5 * k.kappa * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        } else {
          require(k.grid.contains(x), ErrorCode::invalid_argument, "point outside the potential's box");
          return sampled_value(k, x);
        }
      },
      kind_);
}

Point ExternalPotential::gradient(const Point& x) const {
  return std::visit(
      [&](const auto& k) -> Point {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ZeroPotential>) {
          return Point{0.0, 0.0, 0.0};
        } else if constexpr (std::is_same_v<K, HarmonicPotential>) {
          return Point{k.kappa * x[0], k.kappa * x[1], k.kappa * x[2]};
        } else {
          require(k.grid.contains(x), ErrorCode::invalid_argument, "point outside the potential's box");
          Point g{0.0, 0.0, 0.0};
          for (int d = 0; d < k.grid.dim(); ++d) {
            const double h = k.grid.spacing(d);
            Point xp = x, xm = x;
            xp[d] += h;
            xm[d] -= h;
            g[d] = (sampled_value(k, xp) - sampled_value(k, xm)) / (2.0 * h);
          }
          return g;
        }
      },
      kind_);
}

RealField ExternalPotential::on_grid(const Grid& grid) const {
  if (const auto* s = std::get_if<SampledPotential>(&kind_)) {
    require(s->grid == grid, ErrorCode::invalid_argument, "sampled potential lives on a different grid");
    return s->values;
  }
  RealField out(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) out[n] = value(grid.position(n));
  return out;
}

double eval_potential(const ExternalPotential& V, const Point& x) { return V.value(x); }
Point eval_potential_grad(const ExternalPotential& V, const Point& x) { return V.gradient(x); }

}  // namespace hylos
