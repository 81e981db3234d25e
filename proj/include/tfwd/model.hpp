#pragma once

// Radial densities on logarithmic grids and the energy terms of the
// relativistic TFWD functional
//
//   E(rho) = W(rho) + TF(rho) - X(rho) - Z int rho/|x| + D[rho]
//
// together with its c -> infinity counterpart. All integrals are reduced to
// one radial dimension, int_{R^3} g dx = 4 pi int_0^inf r^2 g(r) dr, and then
// evaluated with the trapezoidal rule in x = ln r.

#include <tfwd/errors.hpp>
#include <tfwd/specfun.hpp>

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tfwd {

/// Hartree energy.
using Hartree = double;

inline constexpr double kPhysicalC = 137.036;
inline constexpr double kDefaultLambda = 1.0 / 9.0;

struct ModelParams {
  double Z = 1.0;
  double c = kPhysicalC;
  double lambda = kDefaultLambda;

  double kappa() const { return Z / (c * std::sqrt(lambda)); }

  void validate() const {
    if (!(std::isfinite(Z) && Z > 0.0)) throw DomainError("Z must be positive");
    if (!(std::isfinite(c) && c > 0.0)) throw DomainError("c must be positive");
    if (!(std::isfinite(lambda) && lambda > 0.0)) throw DomainError("lambda must be positive");
  }

  /// Parameters with c chosen so that Z/(c sqrt(lambda)) equals kappa.
  static ModelParams from_kappa(double Z, double kappa, double lambda = kDefaultLambda) {
    if (!(kappa > 0.0 && std::isfinite(kappa))) throw DomainError("kappa must be positive");
    ModelParams p{Z, Z / (kappa * std::sqrt(lambda)), lambda};
    p.validate();
    return p;
  }
};

// ---------------------------------------------------------------------------

/// Strictly increasing positive radii with trapezoidal weights in ln r, so
/// that int_0^inf g(r) dr ~ sum_i w_i g(r_i).
class RadialGrid {
public:
  static constexpr std::size_t kDefaultSize = 2000;
  static constexpr double kDefaultRmax = 50.0;

  RadialGrid() = default;

  static RadialGrid from_nodes(std::vector<double> r) {
    if (r.size() < 2) throw GridError("radial grid needs at least 2 nodes");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!(std::isfinite(r[i]) && r[i] > 0.0))
        throw GridError("radial grid nodes must be positive and finite");
      if (i > 0 && !(r[i] > r[i - 1])) throw GridError("radial grid nodes must be strictly increasing");
    }
    RadialGrid g;
    const std::size_t m = r.size();
    g.r_ = std::move(r);
    g.w_.resize(m);
    g.edge_.resize(m - 1);
    std::vector<double> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = std::log(g.r_[i]);
    for (std::size_t i = 0; i < m; ++i) {
      const double lo = x[i == 0 ? 0 : i - 1], hi = x[i + 1 == m ? m - 1 : i + 1];
      g.w_[i] = 0.5 * g.r_[i] * (hi - lo);
    }
    for (std::size_t i = 0; i + 1 < m; ++i)
      g.edge_[i] = std::sqrt(g.r_[i] * g.r_[i + 1]) / (x[i + 1] - x[i]);
    return g;
  }

  static RadialGrid logarithmic(double r_min, double r_max, std::size_t m) {
    if (!(r_min > 0.0 && r_max > r_min)) throw GridError("need 0 < r_min < r_max");
    if (m < 2) throw GridError("radial grid needs at least 2 nodes");
    std::vector<double> r(m);
    const double step = std::log(r_max / r_min) / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) r[i] = r_min * std::exp(step * static_cast<double>(i));
    r.back() = r_max;
    return from_nodes(std::move(r));
  }

  /// Log grid from 1e-6/Z to r_max.
  static RadialGrid for_charge(double Z, std::size_t m = kDefaultSize, double r_max = kDefaultRmax) {
    return logarithmic(1e-6 / Z, r_max, m);
  }

  std::size_t size() const { return r_.size(); }
  double r(std::size_t i) const { return r_[i]; }
  double weight(std::size_t i) const { return w_[i]; }
  /// Coefficient of (u_{i+1} - u_i)^2 in the discrete int r^2 (du/dr)^2 dr.
  double edge(std::size_t i) const { return edge_[i]; }
  std::span<const double> nodes() const { return r_; }
  std::span<const double> weights() const { return w_; }
  double r_min() const { return r_.front(); }
  double r_max() const { return r_.back(); }

  /// sum_i w_i g(r_i)
  template <class Fn>
  double integrate(Fn&& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < r_.size(); ++i) s += w_[i] * g(i);
    return s;
  }

private:
  std::vector<double> r_, w_, edge_;
};

// ---------------------------------------------------------------------------

/// Nonnegative spherically symmetric density rho(r_i) on a grid.
class RadialDensity {
public:
  RadialDensity() = default;
  RadialDensity(RadialGrid grid, std::vector<double> values) : grid_(std::move(grid)), rho_(std::move(values)) {
    if (rho_.size() != grid_.size()) throw GridError("density size does not match grid size");
    for (double v : rho_)
      if (!(std::isfinite(v) && v >= 0.0)) throw DomainError("density values must be finite and nonnegative");
  }

  static RadialDensity from_function(const RadialGrid& grid, const std::function<double(double)>& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid.r(i));
    return RadialDensity(grid, std::move(v));
  }

  const RadialGrid& grid() const { return grid_; }
  std::span<const double> values() const { return rho_; }
  double operator[](std::size_t i) const { return rho_[i]; }
  std::size_t size() const { return rho_.size(); }

  RadialDensity scaled(double factor) const {
    std::vector<double> v(rho_);
    for (double& x : v) x *= factor;
    return RadialDensity(grid_, std::move(v));
  }

private:
  RadialGrid grid_;
  std::vector<double> rho_;
};

/// Fermi momentum p = (3 pi^2 rho)^(1/3).
inline double fermi_momentum(double rho) { return std::cbrt(3.0 * kPi * kPi * rho); }

/// Density with Fermi momentum p.
inline double density_from_momentum(double p) { return p * p * p / (3.0 * kPi * kPi); }

// ---------------------------------------------------------------------------
// Moments

inline double mass(const RadialDensity& rho) {
  const auto& g = rho.grid();
  return 4.0 * kPi * g.integrate([&](std::size_t i) { return g.r(i) * g.r(i) * rho[i]; });
}

/// int rho^(4/3)
inline double lp43(const RadialDensity& rho) {
  const auto& g = rho.grid();
  return 4.0 * kPi * g.integrate([&](std::size_t i) { return g.r(i) * g.r(i) * std::pow(rho[i], 4.0 / 3.0); });
}

/// int_{p/c > s} rho^(4/3)
inline double tg(const RadialDensity& rho, double s, double c) {
  if (!(s >= 0.0)) throw DomainError("tg: threshold must be nonnegative");
  specfun::require_positive_c(c);
  const auto& g = rho.grid();
  return 4.0 * kPi * g.integrate([&](std::size_t i) {
    if (!(fermi_momentum(rho[i]) / c > s)) return 0.0;
    return g.r(i) * g.r(i) * std::pow(rho[i], 4.0 / 3.0);
  });
}

/// int_{p/c < s} rho^(5/3)
inline double low_density_l53(const RadialDensity& rho, double s, double c) {
  const auto& g = rho.grid();
  return 4.0 * kPi * g.integrate([&](std::size_t i) {
    if (!(fermi_momentum(rho[i]) / c < s)) return 0.0;
    return g.r(i) * g.r(i) * std::pow(rho[i], 5.0 / 3.0);
  });
}

/// H(rho) = int rho^(2/3) arsinh(p/c) / |x|^2
inline double hardy_functional(const RadialDensity& rho, double c) {
  specfun::require_positive_c(c);
  const auto& g = rho.grid();
  return 4.0 * kPi * g.integrate([&](std::size_t i) {
    return std::cbrt(rho[i] * rho[i]) * std::asinh(fermi_momentum(rho[i]) / c);
  });
}

// ---------------------------------------------------------------------------
// Energy terms

namespace detail {

inline void require_gradient_nodes(const RadialGrid& g) {
  if (g.size() < 3) throw GridError("a radial derivative needs at least 3 grid nodes");
}

/// sum over edges of edge_i (u_{i+1} - u_i)^2 = int r^2 (du/dr)^2 dr
inline double dirichlet_form(const RadialGrid& g, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double d = u[i + 1] - u[i];
    s += g.edge(i) * d * d;
  }
  return s;
}

} // namespace detail

/// Prefactor 4 pi * 3 lambda c^3 / (8 pi^2) of the discrete Dirichlet form in u = F(p/c).
inline double weizsacker_prefactor(const ModelParams& params) {
  return 4.0 * kPi * 3.0 * params.lambda * params.c * params.c * params.c / (8.0 * kPi * kPi);
}

/// W = (3 lambda c^3/8 pi^2) int |grad F(p/c)|^2. The derivative is taken of
/// u = F(p/c) itself on the staggered edge midpoints of the grid.
inline Hartree weizsacker_energy(const RadialDensity& rho, const ModelParams& params) {
  params.validate();
  detail::require_gradient_nodes(rho.grid());
  std::vector<double> u(rho.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = specfun::F(fermi_momentum(rho[i]) / params.c);
  return weizsacker_prefactor(params) * detail::dirichlet_form(rho.grid(), u);
}

inline Hartree tf_energy(const RadialDensity& rho, const ModelParams& params) {
  params.validate();
  const auto& g = rho.grid();
  const double c5 = std::pow(params.c, 5);
  return 4.0 * kPi * c5 / (8.0 * kPi * kPi) *
         g.integrate([&](std::size_t i) { return g.r(i) * g.r(i) * specfun::ttf(fermi_momentum(rho[i]) / params.c); });
}

/// X(rho) = int c^4/(8 pi^3) X(p/c); enters the functional with a minus sign.
inline Hartree exchange_energy(const RadialDensity& rho, const ModelParams& params) {
  params.validate();
  const auto& g = rho.grid();
  const double c4 = std::pow(params.c, 4);
  return 4.0 * kPi * c4 / (8.0 * kPi * kPi * kPi) *
         g.integrate([&](std::size_t i) { return g.r(i) * g.r(i) * specfun::exchange_x(fermi_momentum(rho[i]) / params.c); });
}

inline Hartree external_energy(const RadialDensity& rho, const ModelParams& params) {
  params.validate();
  const auto& g = rho.grid();
  return -params.Z * 4.0 * kPi * g.integrate([&](std::size_t i) { return g.r(i) * rho[i]; });
}

/// Newton potential of the shells m_i = 4 pi w_i r_i^2 rho_i:
/// phi_i = sum_j m_j / max(r_i, r_j).
inline std::vector<double> shell_potential(const RadialGrid& g, std::span<const double> shell_mass) {
  const std::size_t m = g.size();
  std::vector<double> phi(m);
  double inner = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    inner += shell_mass[i];
    phi[i] = inner / g.r(i);
  }
  double outer = 0.0;
  for (std::size_t i = m; i-- > 0;) {
    phi[i] += outer;
    outer += shell_mass[i] / g.r(i);
  }
  return phi;
}

/// D[rho] = (1/2) sum_ij m_i m_j / max(r_i, r_j), the Coulomb energy of
/// concentric shells; a symmetric positive quadratic form in rho.
inline Hartree hartree_energy(const RadialDensity& rho) {
  const auto& g = rho.grid();
  std::vector<double> m(g.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = 4.0 * kPi * g.weight(i) * g.r(i) * g.r(i) * rho[i];
  const auto phi = shell_potential(g, m);
  double d = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * phi[i];
  return 0.5 * d;
}

// ---------------------------------------------------------------------------

/// Contribution of r > r_max estimated from an exponential fit to the last
/// two nodes.
struct TailEstimate {
  double mass_beyond = 0.0;
  double relative = 0.0;
  bool warning = false;
};

inline constexpr double kTailTolerance = 1e-8;

inline TailEstimate estimate_tail(const RadialDensity& rho) {
  TailEstimate out;
  const auto& g = rho.grid();
  const std::size_t m = g.size();
  const double last = rho[m - 1], prev = rho[m - 2];
  if (last == 0.0) return out;
  const double dr = g.r(m - 1) - g.r(m - 2);
  const double k = std::log(prev / last) / dr;
  const double total = mass(rho);
  if (!(k > 0.0) || !std::isfinite(k)) {
    out.mass_beyond = std::numeric_limits<double>::infinity();
    out.relative = std::numeric_limits<double>::infinity();
    out.warning = true;
    return out;
  }
  const double R = g.r_max();
  out.mass_beyond = 4.0 * kPi * last * (R * R / k + 2.0 * R / (k * k) + 2.0 / (k * k * k));
  out.relative = total > 0.0 ? out.mass_beyond / total : 0.0;
  out.warning = out.relative > kTailTolerance;
  return out;
}

struct EnergyBreakdown {
  Hartree weizsacker = 0.0;
  Hartree thomas_fermi = 0.0;
  Hartree exchange = 0.0;
  Hartree external = 0.0;
  Hartree hartree = 0.0;
  Hartree total = 0.0;
  double diag_hardy = 0.0;
  double diag_tg = 0.0;
  double tg_threshold = 1.0;
  double diag_l43 = 0.0;
  double mass = 0.0;
  TailEstimate tail;
};

/// Checks the numerical membership conditions for the functional's domain:
/// finite int rho^(4/3), D[rho] and Weizsaecker integral. Throws DomainError
/// with a diagnostic otherwise.
inline void check_domain(const EnergyBreakdown& e) {
  std::string why;
  if (!std::isfinite(e.diag_l43)) why += " int rho^(4/3) is not finite;";
  if (!std::isfinite(e.hartree)) why += " D[rho] is not finite;";
  if (!std::isfinite(e.weizsacker)) why += " Weizsaecker integral is not finite;";
  if (!why.empty()) throw DomainError("density outside the functional's domain:" + why);
}

inline EnergyBreakdown total_energy(const RadialDensity& rho, const ModelParams& params, double tg_threshold = 1.0) {
  params.validate();
  EnergyBreakdown e;
  e.weizsacker = weizsacker_energy(rho, params);
  e.thomas_fermi = tf_energy(rho, params);
  e.exchange = exchange_energy(rho, params);
  e.external = external_energy(rho, params);
  e.hartree = hartree_energy(rho);
  e.diag_hardy = hardy_functional(rho, params.c);
  e.tg_threshold = tg_threshold;
  e.diag_tg = tg(rho, tg_threshold, params.c);
  e.diag_l43 = lp43(rho);
  e.mass = mass(rho);
  e.tail = estimate_tail(rho);
  check_domain(e);
  e.total = e.weizsacker + e.thomas_fermi - e.exchange + e.external + e.hartree;
  return e;
}

// ---------------------------------------------------------------------------
// c -> infinity limit

struct NonrelBreakdown {
  Hartree weizsacker = 0.0;    // (lambda/2) int |grad sqrt(rho)|^2
  Hartree thomas_fermi = 0.0;  // (3/10) gamma_TF int rho^(5/3)
  Hartree exchange = 0.0;      // (3/4)(3/pi)^(1/3) int rho^(4/3)
  Hartree external = 0.0;
  Hartree hartree = 0.0;
  Hartree total = 0.0;
};

inline NonrelBreakdown nonrel_breakdown(const RadialDensity& rho, const ModelParams& params) {
  params.validate();
  detail::require_gradient_nodes(rho.grid());
  const auto& g = rho.grid();
  NonrelBreakdown e;
  std::vector<double> root(rho.size());
  for (std::size_t i = 0; i < root.size(); ++i) root[i] = std::sqrt(rho[i]);
  e.weizsacker = 0.5 * params.lambda * 4.0 * kPi * detail::dirichlet_form(g, root);
  e.thomas_fermi = 0.3 * kGammaTF * 4.0 * kPi *
                   g.integrate([&](std::size_t i) { return g.r(i) * g.r(i) * std::pow(rho[i], 5.0 / 3.0); });
  e.exchange = 0.75 * std::cbrt(3.0 / kPi) * lp43(rho);
  e.external = external_energy(rho, params);
  e.hartree = hartree_energy(rho);
  e.total = e.weizsacker + e.thomas_fermi - e.exchange + e.external + e.hartree;
  return e;
}

inline Hartree nonrel_energy(const RadialDensity& rho, const ModelParams& params) {
  return nonrel_breakdown(rho, params).total;
}

// ---------------------------------------------------------------------------

/// Interpolation in ln r onto another grid (geometric between positive
/// values, linear otherwise); zero beyond the
/// source's last node, constant below its first.
inline RadialDensity resample(std::span<const double> r, std::span<const double> rho, const RadialGrid& target) {
  if (r.size() != rho.size() || r.size() < 2) throw GridError("resample: need matching columns with >= 2 rows");
  std::vector<double> out(target.size(), 0.0);
  std::size_t j = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double x = target.r(i);
    if (x <= r.front()) {
      out[i] = rho.front();
      continue;
    }
    if (x > r.back()) break;
    while (j + 1 < r.size() && r[j + 1] < x) ++j;
    const double lx = std::log(x), l0 = std::log(r[j]), l1 = std::log(r[j + 1]);
    const double w = (lx - l0) / (l1 - l0);
    if (rho[j] > 0.0 && rho[j + 1] > 0.0)
      out[i] = std::exp((1.0 - w) * std::log(rho[j]) + w * std::log(rho[j + 1]));
    else
      out[i] = std::max(0.0, (1.0 - w) * rho[j] + w * rho[j + 1]);
  }
  return RadialDensity(target, std::move(out));
}

} // namespace tfwd
