#pragma once

// Thomas-Fermi atom without exchange or gradient terms:
//
//   E_TF(rho) = (3/10) gamma int rho^{5/3} - Z int rho/|x| + D[rho],
//
// minimized over rho >= 0 without a mass constraint. The minimizer is the
// neutral atom; with gamma = gamma_TF its energy is -e_TF Z^{7/3}.
//
// Two independent routes:
//
//  * shooting: with rho = (2/gamma)^{3/2} (Z phi(x)/r)^{3/2} and r = b x,
//    b = (1/2)(3 pi / 4)^{2/3} Z^{-1/3}, the Euler-Lagrange equation becomes
//    phi'' = phi^{3/2}/sqrt(x), phi(0) = 1, phi(inf) = 0. The virial relations
//    give E = -(3/7) (B/b) Z^2 with B = -phi'(0), i.e. e_TF = (3/7) B / b_1.
//    In t = sqrt(x) the system phi_t = 2 t psi, psi_t = 2 phi^{3/2} has no
//    singular coefficients; B is found by bisection on the qualitative
//    behavior (phi crossing zero vs. psi turning positive).
//
//  * direct minimization on a radial log grid by a relaxed self-consistent
//    iteration: the partial-linearization step
//    rho_new = ((2/gamma)(Z/r - Phi[rho])_+)^{3/2} gives a descent direction
//    for the convex functional, followed by an exact line search.

#include <tfwd/errors.hpp>
#include <tfwd/model.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace tfwd::tf {

/// b_1 = (1/2)(3 pi / 4)^{2/3}, the TF length unit for Z = 1 and gamma_TF.
inline double length_unit() { return 0.5 * std::pow(3.0 * kPi / 4.0, 2.0 / 3.0); }

struct ShootingResult {
  double slope = 0.0;    // B = -phi'(0)
  double energy = 0.0;   // e_TF
  int bisections = 0;
};

namespace detail {

/// +1 if psi turns positive (slope too small), -1 if phi hits zero (too
/// large), 0 if neither happens before t_max.
inline int shoot_outcome(double B, double dt, double t_max) {
  double t = 0.0, phi = 1.0, psi = -B;
  auto rhs = [](double tt, double ph, double ps, double& dph, double& dps) {
    dph = 2.0 * tt * ps;
    dps = 2.0 * std::pow(std::max(ph, 0.0), 1.5);
  };
  while (t < t_max) {
    double k1p, k1s, k2p, k2s, k3p, k3s, k4p, k4s;
    rhs(t, phi, psi, k1p, k1s);
    rhs(t + 0.5 * dt, phi + 0.5 * dt * k1p, psi + 0.5 * dt * k1s, k2p, k2s);
    rhs(t + 0.5 * dt, phi + 0.5 * dt * k2p, psi + 0.5 * dt * k2s, k3p, k3s);
    rhs(t + dt, phi + dt * k3p, psi + dt * k3s, k4p, k4s);
    phi += dt / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    psi += dt / 6.0 * (k1s + 2 * k2s + 2 * k3s + k4s);
    t += dt;
    if (phi <= 0.0) return -1;
    if (psi > 0.0) return +1;
  }
  return 0;
}

} // namespace detail

inline ShootingResult shoot(double dt = 1e-3, double t_max = 60.0) {
  double lo = 1.0, hi = 2.0;
  if (detail::shoot_outcome(lo, dt, t_max) != 1 || detail::shoot_outcome(hi, dt, t_max) != -1)
    throw ConvergenceError("tf::shoot: initial slope bracket [1, 2] does not straddle the solution");
  ShootingResult res;
  while (hi - lo > 1e-14 * hi && res.bisections < 200) {
    const double mid = 0.5 * (lo + hi);
    const int o = detail::shoot_outcome(mid, dt, t_max);
    if (o == 0) {
      lo = hi = mid;
      break;
    }
    (o > 0 ? lo : hi) = mid;
    ++res.bisections;
  }
  res.slope = 0.5 * (lo + hi);
  res.energy = 3.0 / 7.0 * res.slope / length_unit();
  return res;
}

// ---------------------------------------------------------------------------

struct MinimizationResult {
  double energy = 0.0;
  double mass = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> rho;
};

struct MinimizationOptions {
  double gamma = kGammaTF;
  std::size_t grid_size = 4000;
  double r_min = 1e-12;
  double r_max = 1e4;   // in units of Z^{-1/3}
  double tol = 1e-11;   // relative energy change
  int max_iter = 20000;
};

namespace detail {

struct TfFunctional {
  const RadialGrid& g;
  double Z, gamma;
  std::vector<double> vol;  // 4 pi w r^2

  TfFunctional(const RadialGrid& grid, double z, double gam) : g(grid), Z(z), gamma(gam), vol(grid.size()) {
    for (std::size_t i = 0; i < g.size(); ++i) vol[i] = 4.0 * kPi * g.weight(i) * g.r(i) * g.r(i);
  }

  std::vector<double> shells(const std::vector<double>& rho) const {
    std::vector<double> m(rho.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = vol[i] * rho[i];
    return m;
  }

  double energy(const std::vector<double>& rho) const {
    const auto m = shells(rho);
    const auto phi = shell_potential(g, m);
    double e = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i)
      e += vol[i] * (0.3 * gamma * std::pow(rho[i], 5.0 / 3.0) - Z * rho[i] / g.r(i)) + 0.5 * m[i] * phi[i];
    return e;
  }
};

} // namespace detail

/// Direct minimization of E_TF on a log grid scaled to Z^{-1/3}.
inline MinimizationResult minimize(double Z, const MinimizationOptions& opt = {}) {
  if (!(Z > 0.0) || !(opt.gamma > 0.0)) throw DomainError("tf::minimize: Z and gamma must be positive");
  const double scale = 1.0 / std::cbrt(Z);
  const auto g = RadialGrid::logarithmic(opt.r_min * scale, opt.r_max * scale, opt.grid_size);
  const detail::TfFunctional f(g, Z, opt.gamma);
  const std::size_t m = g.size();

  // start from the hydrogen-like screening-free guess
  std::vector<double> rho(m);
  for (std::size_t i = 0; i < m; ++i) rho[i] = std::pow(2.0 / opt.gamma * Z / g.r(i), 1.5) * std::exp(-g.r(i) / scale);

  MinimizationResult res;
  double e = f.energy(rho);
  std::vector<double> d(m), trial(m);
  for (res.iterations = 1; res.iterations <= opt.max_iter; ++res.iterations) {
    const auto mass_shells = f.shells(rho);
    const auto phi = shell_potential(g, mass_shells);
    for (std::size_t i = 0; i < m; ++i) {
      const double v = std::max(0.0, Z / g.r(i) - phi[i]);
      d[i] = std::pow(2.0 / opt.gamma * v, 1.5) - rho[i];
    }
    // exact line search on [0, 1]: E(rho + tau d) is convex in tau
    const auto dm = f.shells(d);
    const auto dphi = shell_potential(g, dm);
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      lin += dm[i] * (phi[i] - Z / g.r(i));
      quad += dm[i] * dphi[i];
    }
    auto slope = [&](double tau) {
      double s = lin + tau * quad;
      for (std::size_t i = 0; i < m; ++i)
        s += 0.5 * opt.gamma * f.vol[i] * std::cbrt(std::pow(std::max(0.0, rho[i] + tau * d[i]), 2.0)) * d[i];
      return s;
    };
    double tau = 1.0;
    if (slope(1.0) > 0.0) {
      double lo = 0.0, hi = 1.0;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? hi : lo) = mid;
      }
      tau = 0.5 * (lo + hi);
    }
    for (std::size_t i = 0; i < m; ++i) trial[i] = std::max(0.0, rho[i] + tau * d[i]);
    const double e_new = f.energy(trial);
    if (e_new > e) {  // roundoff floor
      res.converged = true;
      break;
    }
    rho.swap(trial);
    const double change = std::abs(e - e_new) / std::abs(e_new);
    e = e_new;
    if (change < opt.tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged)
    throw ConvergenceError("tf::minimize: no convergence after " + std::to_string(opt.max_iter) +
                           " iterations (E = " + std::to_string(e) + ")");
  res.energy = e;
  res.mass = 0.0;
  for (std::size_t i = 0; i < m; ++i) res.mass += f.vol[i] * rho[i];
  res.rho = std::move(rho);
  return res;
}

/// e_TF > 0 with -e_TF the TF energy of hydrogen at gamma_TF; shooting oracle,
/// computed once.
inline double hydrogen_energy() {
  static const double value = shoot().energy;
  return value;
}

} // namespace tfwd::tf
