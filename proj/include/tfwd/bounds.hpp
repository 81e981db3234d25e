#pragma once

// Lower bound on the TFWD energy and the excess-charge right-hand side.
//
// s0(kappa) balances the Hardy lower bound of the Weizsaecker term against
// the high-density part of the nuclear attraction:
//
//   sqrt(A * 3 T(s)(3 pi^2)^{1/3} / (8 s^4)) = kappa / (2 sqrt(arsinh s)),
//   A = 3^{5/3} / (2^7 pi^{2/3}).
//
// s0 grows like exp(const * kappa^2) and overflows a double for kappa above
// about 12, so the root is located in y = arsinh(s) and s0, the prefactor
// 4 s0^5 / (5 T(s0)) and the bound are also reported through their logs.

#include <tfwd/errors.hpp>
#include <tfwd/model.hpp>
#include <tfwd/specfun.hpp>
#include <tfwd/tf_atom.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace tfwd::bounds {

inline constexpr double kS0Residual = 1e-12;

/// 3^{5/3} / (2^7 pi^{2/3}), the Hardy constant of the Weizsaecker bound per (lambda c).
inline double hardy_constant() { return std::pow(3.0, 5.0 / 3.0) / (128.0 * std::pow(kPi, 2.0 / 3.0)); }

namespace detail {

/// T(s)/s^4 as a function of y = arsinh(s), valid for arbitrarily large y.
inline double q_of_y(double y) {
  if (y < 20.0) return specfun::ttf_over_t4(std::sinh(y));
  // 1/sinh(y) without overflow; the large-s form of T(s)/s^4
  const double w = 2.0 * std::exp(-y) / (1.0 - std::exp(-2.0 * y));
  const double w2 = w * w;
  return (2.0 + w2) * std::sqrt(1.0 + w2) - 8.0 / 3.0 * w - y * w2 * w2;
}

/// ln sinh(y) without overflow.
inline double log_sinh(double y) {
  if (y < 20.0) return std::log(std::sinh(y));
  return y - std::log(2.0) + std::log1p(-std::exp(-2.0 * y));
}

inline double lhs(double y) { return std::sqrt(hardy_constant() * 3.0 * q_of_y(y) * std::cbrt(3.0 * kPi * kPi) / 8.0); }

} // namespace detail

struct S0Solution {
  double kappa = 0.0;      // effective kappa (z_factor applied)
  double y = 0.0;          // arsinh(s0)
  double s0 = 0.0;         // +inf when it exceeds the double range
  double log_s0 = 0.0;
  double residual = 0.0;   // lhs - rhs of the defining equation at s0
  int iterations = 0;
};

/// Residual of the defining equation at y = arsinh(s).
inline double s0_residual(double y, double kappa) { return detail::lhs(y) - kappa / (2.0 * std::sqrt(y)); }

/// Root of the s0 equation for kappa_eff = z_factor * kappa. The residual
/// is increasing in s; the bracket starts at s in [1e-8, 1] and its upper end
/// is doubled (in y) until the sign changes.
inline S0Solution solve_s0_detailed(double kappa, double exchange_weight = 1.0, double z_factor = 1.0) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("solve_s0: kappa must be positive and finite");
  if (!(z_factor > 0.0)) throw DomainError("solve_s0: z_factor must be positive");
  if (!(exchange_weight >= 0.0)) throw DomainError("solve_s0: exchange_weight must be nonnegative");
  const double k = z_factor * kappa;
  double lo = std::asinh(1e-8), hi = std::asinh(1.0);
  S0Solution sol;
  sol.kappa = k;
  while (s0_residual(lo, k) > 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw ConvergenceError("solve_s0: lower bracket underflow for kappa = " + std::to_string(k));
  }
  while (s0_residual(hi, k) < 0.0) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw ConvergenceError("solve_s0: bracket expansion failed for kappa = " + std::to_string(k));
  }
  // bisection down to adjacent doubles
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (s0_residual(mid, k) < 0.0 ? lo : hi) = mid;
    ++sol.iterations;
  }
  const double rl = s0_residual(lo, k), rh = s0_residual(hi, k);
  sol.y = std::abs(rl) <= std::abs(rh) ? lo : hi;
  sol.residual = std::min(std::abs(rl), std::abs(rh));
  sol.s0 = std::sinh(sol.y);
  sol.log_s0 = detail::log_sinh(sol.y);
  return sol;
}

inline double solve_s0(double kappa, double exchange_weight = 1.0, double z_factor = 1.0) {
  return solve_s0_detailed(kappa, exchange_weight, z_factor).s0;
}

/// ln(4 s^5 / (5 T(s))) for s = sinh(y); equals ln(gamma_TF / gamma_e(s)).
inline double log_coefficient(double y) {
  if (y < specfun::kSeriesCrossover) return std::log(0.8 / specfun::ttf_over_t5(std::sinh(y)));
  return std::log(0.8) + detail::log_sinh(y) - std::log(detail::q_of_y(y));
}

// ---------------------------------------------------------------------------

/// e_TF: -e_TF Z^{7/3} is the Thomas-Fermi energy of a neutral atom.
inline double tf_hydrogen_energy() { return tf::hydrogen_energy(); }

inline const specfun::XiConstant& xi_constant() {
  static const specfun::XiConstant value = specfun::compute_xi(3.0);
  return value;
}

inline double mu_constant() {
  static const double value = specfun::compute_mu().value;
  return value;
}

struct BoundReport {
  double Z = 0.0, c = 0.0, lambda = 0.0, N = 0.0;
  double kappa = 0.0;
  double s0 = 0.0;
  double log_s0 = 0.0;
  double s0_residual = 0.0;
  double coefficient = 0.0;      // 4 s0^5 / (5 T(s0)); +inf beyond double range
  double log_coefficient = 0.0;
  double e_tf = 0.0;
  double xi = 0.0;
  double exchange_weight = 1.0;
  double z_factor = 1.0;
  double tf_part = 0.0;          // -coefficient e_TF (z_factor Z)^{7/3}
  double exchange_part = 0.0;    // -exchange_weight xi c N
  double bound_value = 0.0;      // -inf when the coefficient overflows
};

/// TFWD(rho) >= -coefficient(kappa) e_TF Z^{7/3} - xi c N, generalized by
/// Z -> z_factor Z (also in kappa) and xi -> exchange_weight xi.
inline BoundReport lower_bound(const ModelParams& params, double N, double exchange_weight = 1.0, double z_factor = 1.0) {
  params.validate();
  if (!(N >= 0.0) || !std::isfinite(N)) throw DomainError("lower_bound: N must be nonnegative and finite");
  BoundReport rep;
  rep.Z = params.Z;
  rep.c = params.c;
  rep.lambda = params.lambda;
  rep.N = N;
  rep.exchange_weight = exchange_weight;
  rep.z_factor = z_factor;
  const auto sol = solve_s0_detailed(params.kappa(), exchange_weight, z_factor);
  rep.kappa = params.kappa();
  rep.s0 = sol.s0;
  rep.log_s0 = sol.log_s0;
  rep.s0_residual = sol.residual;
  rep.log_coefficient = log_coefficient(sol.y);
  rep.coefficient = std::exp(rep.log_coefficient);
  rep.e_tf = tf_hydrogen_energy();
  rep.xi = xi_constant().xi;
  const double log_tf = rep.log_coefficient + std::log(rep.e_tf) + 7.0 / 3.0 * std::log(z_factor * params.Z);
  rep.tf_part = -std::exp(log_tf);
  rep.exchange_part = -exchange_weight * rep.xi * params.c * N;
  rep.bound_value = rep.tf_part + rep.exchange_part;
  return rep;
}

// ---------------------------------------------------------------------------

struct ExcessRhs {
  double s_opt = 0.0;   // localization width minimizing the Weizsaecker + Hartree pair
  double S_opt = 0.0;   // split point minimizing the Thomas-Fermi/exchange remainder
  double c1 = 0.0;      // c1(S_opt)
  double c2 = 0.0;      // c2(S_opt)
  double weizsacker_hartree = 0.0;  // 3 pi sqrt2 sqrt(lambda mu D / N)
  double remainder = 0.0;           // 8 c1 + 8 c2 L43 / (c N)
  double rhs = 0.0;                 // upper bound on N
};

/// c1(S) = 3(2+sqrt2)/(2^5 pi^2) S^5/T(S).
inline double excess_c1(double S) {
  return 3.0 * (2.0 + std::sqrt(2.0)) / (32.0 * kPi * kPi) / specfun::ttf_over_t5(S);
}

/// c2(S) = 3^{4/3}(2+sqrt2)/(2^5 pi^{4/3}) S^4/T(S).
inline double excess_c2(double S) {
  return std::pow(3.0, 4.0 / 3.0) * (2.0 + std::sqrt(2.0)) / (32.0 * std::pow(kPi, 4.0 / 3.0)) / specfun::ttf_over_t4(S);
}

/// Right-hand side from the moments N = int rho, D[rho] and L43 = int rho^{4/3}.
inline ExcessRhs excess_rhs_from_moments(const ModelParams& params, double N, double D, double L43) {
  params.validate();
  if (!(N > 0.0)) throw DomainError("excess_rhs: N must be positive");
  if (!(D >= 0.0) || !std::isfinite(D) || !(L43 >= 0.0) || !std::isfinite(L43))
    throw DomainError("excess_rhs: D and L43 must be finite and nonnegative");
  const double mu = mu_constant();
  ExcessRhs out;
  const double a = 9.0 * kPi * kPi * params.lambda * mu / 8.0;  // coefficient of 1/s
  const double b = 4.0 * D / N;                                 // coefficient of s
  out.s_opt = b > 0.0 ? std::sqrt(a / b) : std::numeric_limits<double>::infinity();
  out.weizsacker_hartree = 3.0 * kPi * std::sqrt(2.0) * std::sqrt(params.lambda * mu * D / N);

  const double ratio = L43 / (params.c * N);
  auto objective = [&](double logS) {
    const double S = std::exp(logS);
    return -(8.0 * excess_c1(S) + 8.0 * excess_c2(S) * ratio);
  };
  constexpr std::size_t n = 601;
  const double lo = std::log(1e-3), hi = std::log(1e3);
  const auto best = opt1d::scan_then_refine(objective, [&](std::size_t i) { return lo + (hi - lo) * i / (n - 1); }, n, 1e-10);
  out.S_opt = std::exp(best.location);
  out.c1 = excess_c1(out.S_opt);
  out.c2 = excess_c2(out.S_opt);
  out.remainder = -best.value;
  out.rhs = 2.0 * params.Z + out.weizsacker_hartree + out.remainder;
  return out;
}

inline ExcessRhs excess_rhs(const RadialDensity& rho, const ModelParams& params) {
  const double N = mass(rho);
  if (!(N > 0.0)) throw DomainError("excess_rhs: density has zero mass");
  return excess_rhs_from_moments(params, N, hartree_energy(rho), lp43(rho));
}

} // namespace tfwd::bounds
