#pragma once

// Scalar functions of the dimensionless Fermi momentum t = p/c that enter the
// relativistic Thomas-Fermi-Weizsaecker-Dirac functional, and the extremal
// constants derived from them.
//
// Every function is evaluated so that no digits are lost for small t: the
// kinetic and exchange kernels switch to their convergent power series below
// kSeriesCrossover, where the closed forms suffer catastrophic cancellation.

#include <tfwd/errors.hpp>
#include <tfwd/optimize1d.hpp>
#include <tfwd/quadrature.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace tfwd {

inline constexpr double kPi = std::numbers::pi;

/// Thomas-Fermi constant (3 pi^2)^(2/3).
inline const double kGammaTF = std::cbrt(3.0 * kPi * kPi) * std::cbrt(3.0 * kPi * kPi);

namespace specfun {

/// Below this t the kinetic and exchange kernels are summed as power series.
inline constexpr double kSeriesCrossover = 0.25;

inline void require_nonneg(double t, const char* what) {
  if (!std::isfinite(t) || t < 0.0)
    throw DomainError(std::string(what) + ": argument must be finite and nonnegative, got " +
                      std::to_string(t));
}

// ---------------------------------------------------------------------------
// f^2 and f

/// f(t)^2 = t (t^2+1)^(-1/2) + 2 t^2 (t^2+1)^(-1) arsinh(t).
inline double f_sq(double t) {
  require_nonneg(t, "f_sq");
  const double q2 = 1.0 + t * t;
  return t / std::sqrt(q2) + 2.0 * t * t / q2 * std::asinh(t);
}

inline double f_value(double t) { return std::sqrt(f_sq(t)); }

// ---------------------------------------------------------------------------
// Thomas-Fermi kernel T(t) = 8 int_0^t s^2 (sqrt(1+s^2) - 1) ds

namespace detail {

// T(t)/t^5 = 8 sum_{k>=1} binom(1/2,k) t^(2k-2) / (2k+3)
inline double ttf_series_over_t5(double t) {
  const double x = t * t;
  double binom = 0.5, xp = 1.0, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = binom * xp / (2.0 * k + 3.0);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    binom *= (0.5 - k) / (k + 1.0);
    xp *= x;
  }
  return 8.0 * sum;
}

// g(t)/t^3 with g(t) = t sqrt(t^2+1) - arsinh(t) = 2 sum_k binom(-1/2,k) t^(2k+3)/(2k+3)
inline double g_series_over_t3(double t) {
  const double x = t * t;
  double binom = 1.0, xp = 1.0, sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double term = binom * xp / (2.0 * k + 3.0);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    binom *= (-0.5 - k) / (k + 1.0);
    xp *= x;
  }
  return 2.0 * sum;
}

inline double ttf_direct(double t) {
  const double q = std::hypot(1.0, t);
  return t * (2.0 * t * t + 1.0) * q - std::asinh(t) - 8.0 / 3.0 * t * t * t;
}

} // namespace detail

/// T(t) = t(t^2+1)^(3/2) + t^3(t^2+1)^(1/2) - arsinh(t) - (8/3) t^3.
inline double ttf(double t) {
  require_nonneg(t, "ttf");
  if (t < kSeriesCrossover) {
    const double t2 = t * t;
    return detail::ttf_series_over_t5(t) * t2 * t2 * t;
  }
  return detail::ttf_direct(t);
}

/// T(t)/t^4, finite for all t >= 0 (limit 0 at t = 0, 2 at infinity).
inline double ttf_over_t4(double t) {
  require_nonneg(t, "ttf_over_t4");
  if (t < kSeriesCrossover) return detail::ttf_series_over_t5(t) * t;
  if (t > 4.0) {
    if (std::isinf(t)) return 2.0;
    const double w = 1.0 / t;
    const double w2 = w * w;
    return (2.0 + w2) * std::sqrt(1.0 + w2) - 8.0 / 3.0 * w - std::asinh(t) * w2 * w2;
  }
  const double t2 = t * t;
  return detail::ttf_direct(t) / (t2 * t2);
}

/// T(t)/t^5 (limit 4/5 at t = 0).
inline double ttf_over_t5(double t) {
  require_nonneg(t, "ttf_over_t5");
  if (t < kSeriesCrossover) return detail::ttf_series_over_t5(t);
  return ttf_over_t4(t) / t;
}

/// T'(t) = 8 t^2 (sqrt(1+t^2) - 1), written without cancellation.
inline double ttf_prime(double t) {
  const double t2 = t * t;
  return 8.0 * t2 * t2 / (std::sqrt(1.0 + t2) + 1.0);
}

// ---------------------------------------------------------------------------
// Exchange kernel X(t) = 2 t^4 - 3 g(t)^2

/// g(t) = t sqrt(t^2+1) - arsinh(t).
inline double exchange_g(double t) {
  require_nonneg(t, "exchange_g");
  if (t < kSeriesCrossover) return detail::g_series_over_t3(t) * t * t * t;
  return t * std::hypot(1.0, t) - std::asinh(t);
}

inline double exchange_x(double t) {
  const double g = exchange_g(t);
  const double t2 = t * t;
  return 2.0 * t2 * t2 - 3.0 * g * g;
}

/// X'(t)/t^2 = 8t - 12 g(t)/sqrt(1+t^2).
inline double exchange_x_prime_over_t2(double t) {
  if (t == 0.0) return 0.0;
  const double g = exchange_g(t);
  return 8.0 * t - 12.0 * g / std::sqrt(1.0 + t * t);
}

/// X(t)/t^alpha = 2 t^(4-alpha) - 3 t^(6-alpha) (g/t^3)^2, exact at the t -> 0 end.
inline double exchange_x_over_pow(double t, double alpha) {
  require_nonneg(t, "exchange_x_over_pow");
  const double g3 = t < kSeriesCrossover ? detail::g_series_over_t3(t) : exchange_g(t) / (t * t * t);
  return 2.0 * std::pow(t, 4.0 - alpha) - 3.0 * std::pow(t, 6.0 - alpha) * g3 * g3;
}

// ---------------------------------------------------------------------------
// a and b

inline void require_positive_c(double c) {
  if (!std::isfinite(c) || c <= 0.0) throw DomainError("speed of light c must be positive and finite");
}

/// a(t) = c^5/(8 pi^2) T(t) + c^4/(8 pi^3) 3 g(t)^2.
inline double func_a(double t, double c) {
  require_nonneg(t, "func_a");
  require_positive_c(c);
  const double g = exchange_g(t);
  const double c4 = c * c * c * c;
  return c4 * c / (8.0 * kPi * kPi) * ttf(t) + c4 / (8.0 * kPi * kPi * kPi) * 3.0 * g * g;
}

/// b(t) = c^4/(8 pi^3) 2 t^4.
inline double func_b(double t, double c) {
  require_nonneg(t, "func_b");
  require_positive_c(c);
  const double c4 = c * c * c * c;
  const double t2 = t * t;
  return c4 / (8.0 * kPi * kPi * kPi) * 2.0 * t2 * t2;
}

// ---------------------------------------------------------------------------
// F(t) = int_0^t f(s) ds

/// Piecewise Chebyshev interpolant of F.
///
/// Nodes: t < 2^kMinExp uses the series F = (2/3)t^(3/2) + (3/14)t^(7/2);
/// every dyadic segment [2^k, 2^(k+1)] for kMinExp <= k < kMaxExp carries a
/// degree-(kDegree-1) Chebyshev expansion built from kDegree Chebyshev-Gauss
/// nodes, with node values from 32-point Gauss-Legendre integration of f
/// starting at the segment's left end. Above 2^kMaxExp, F is integrated
/// directly. The maximum relative deviation from direct quadrature, measured
/// at points between the interpolation nodes, is stored in certified_error().
class FInterpolant {
public:
  static constexpr int kMinExp = -20;
  static constexpr int kMaxExp = 44;
  static constexpr int kDegree = 26;

  static const FInterpolant& instance() {
    static const FInterpolant interp;
    return interp;
  }

  double eval(double t) const {
    if (t < t_min_) return series(t);
    if (t >= t_max_) return left_value_.back() + tail_integral(t_max_, t);
    int exp2 = 0;
    std::frexp(t, &exp2);  // t in [2^(exp2-1), 2^exp2)
    const int seg = std::clamp(exp2 - 1 - kMinExp, 0, num_segments() - 1);
    return eval_segment(seg, t);
  }

  /// Solves F(t) = u for t (F is strictly increasing).
  double inverse(double u) const {
    if (u <= 0.0) return 0.0;
    if (u < left_value_.front()) {
      double t = std::cbrt(1.5 * u);
      t *= t;
      for (int it = 0; it < 8; ++it) {
        const double step = (series(t) - u) / f_value(t);
        t -= step;
        if (std::abs(step) <= 1e-16 * t) break;
      }
      return t;
    }
    if (u >= left_value_.back()) {
      double lo = t_max_, hi = 2.0 * t_max_;
      while (eval(hi) < u) {
        lo = hi;
        hi *= 2.0;
      }
      return solve_bracketed(u, lo, hi, -1);
    }
    const auto it = std::upper_bound(left_value_.begin(), left_value_.end(), u);
    const int seg = static_cast<int>(it - left_value_.begin()) - 1;
    return solve_bracketed(u, segment_left(seg), 2.0 * segment_left(seg), seg);
  }

  double certified_error() const { return certified_error_; }

private:
  FInterpolant() : rule_(quad::gauss_legendre(32)) {
    t_min_ = std::ldexp(1.0, kMinExp);
    t_max_ = std::ldexp(1.0, kMaxExp);
    const int nseg = kMaxExp - kMinExp;
    coeffs_.resize(nseg);
    left_value_.resize(nseg + 1);
    left_value_[0] = series(t_min_);
    for (int s = 0; s < nseg; ++s) {
      const double a = segment_left(s), b = 2.0 * a;
      std::array<double, kDegree> values{};
      for (int j = 0; j < kDegree; ++j) {
        const double theta = kPi * (j + 0.5) / kDegree;
        const double t = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
        values[j] = left_value_[s] + segment_integral(a, t);
      }
      for (int k = 0; k < kDegree; ++k) {
        double sum = 0.0;
        for (int j = 0; j < kDegree; ++j)
          sum += values[j] * std::cos(kPi * k * (j + 0.5) / kDegree);
        coeffs_[s][k] = (k == 0 ? 1.0 : 2.0) * sum / kDegree;
      }
      left_value_[s + 1] = left_value_[s] + segment_integral(a, b);
    }
    certified_error_ = measure_error();
  }

  int num_segments() const { return static_cast<int>(coeffs_.size()); }
  static double segment_left(int s) { return std::ldexp(1.0, kMinExp + s); }

  static double series(double t) {
    const double t2 = t * t;
    return std::sqrt(t) * t * (2.0 / 3.0 + 3.0 / 14.0 * t2 - 11.0 / 48.0 * t2 * t2);
  }

  double segment_integral(double a, double t) const {
    if (t <= a) return 0.0;
    return quad::gauss_integrate(rule_, [](double s) { return f_value(s); }, a, t, 2);
  }

  double tail_integral(double a, double t) const {
    // integrate in log variable: int f(s) ds = int f(e^y) e^y dy
    const double ya = std::log(a), yb = std::log(t);
    const int panels = std::max(1, static_cast<int>(std::ceil((yb - ya) / 0.5)));
    return quad::gauss_integrate(
        rule_, [](double y) { const double s = std::exp(y); return f_value(s) * s; }, ya, yb, panels);
  }

  double eval_segment(int s, double t) const {
    const double a = segment_left(s);
    const double x = (t - 1.5 * a) / (0.5 * a);
    const auto& c = coeffs_[s];
    double b1 = 0.0, b2 = 0.0;
    for (int k = kDegree - 1; k >= 1; --k) {
      const double b0 = 2.0 * x * b1 - b2 + c[k];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + c[0];
  }

  double solve_bracketed(double u, double lo, double hi, int seg) const {
    auto value = [&](double t) { return seg >= 0 ? eval_segment(seg, t) : eval(t); };
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      const double r = value(t) - u;
      if (r > 0.0) hi = t; else lo = t;
      double next = t - r / f_value(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) <= 2e-16 * t || hi - lo <= 2e-16 * hi) return next;
      t = next;
    }
    return t;
  }

  double measure_error() const {
    double worst = 0.0;
    for (int s = 0; s < num_segments(); ++s) {
      const double a = segment_left(s);
      for (int j = 0; j <= 2 * kDegree; ++j) {
        const double t = a + a * (j + 0.5) / (2.0 * kDegree + 1.0);
        const double exact = left_value_[s] + segment_integral(a, t);
        worst = std::max(worst, std::abs(eval_segment(s, t) - exact) / exact);
      }
    }
    return worst;
  }

  quad::GaussRule rule_;
  double t_min_ = 0.0, t_max_ = 0.0;
  std::vector<std::array<double, kDegree>> coeffs_;
  std::vector<double> left_value_;
  double certified_error_ = 0.0;
};

/// F(t) = int_0^t f(s) ds.
inline double F(double t) {
  require_nonneg(t, "F");
  return FInterpolant::instance().eval(t);
}

/// Inverse of F on [0, inf).
inline double F_inverse(double u) {
  if (!std::isfinite(u) || u < 0.0) throw DomainError("F_inverse: argument must be finite and nonnegative");
  return FInterpolant::instance().inverse(u);
}

// ---------------------------------------------------------------------------
// Extremal constants

struct ExtremalConstant {
  double value = 0.0;
  std::optional<double> argmax;  // empty when the supremum is a limit at t -> 0
  std::string method;
};

struct XiConstant {
  double alpha = 3.0;
  ExtremalConstant xi0;
  double xi = 0.0;  // xi0 / (4 pi)
};

/// Default scan: 10^4 log-spaced points on [1e-8, 1e8].
inline constexpr std::size_t kScanPoints = 10000;
inline constexpr double kScanMin = 1e-8;
inline constexpr double kScanMax = 1e8;
inline constexpr double kRefineTol = 1e-9;

inline double log_grid_point(std::size_t i, std::size_t n, double lo = kScanMin, double hi = kScanMax) {
  if (i + 1 >= n) return hi;
  return lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
}

/// mu = max_{t>0} f(t)^2 / t.
inline ExtremalConstant compute_mu(std::size_t scan_points = kScanPoints) {
  auto ratio = [](double t) { return f_sq(t) / t; };
  auto grid = [&](std::size_t i) { return log_grid_point(i, scan_points); };
  const auto ext = opt1d::scan_then_refine(ratio, grid, scan_points, kRefineTol);
  return {ext.value, ext.location,
          "log-grid scan of f^2/t on [1e-8, 1e8] (" + std::to_string(scan_points) +
              " points) + golden-section refinement to 1e-9 in t"};
}

/// xi0(alpha) = sup_{t>0} X(t)/t^alpha for alpha in [0, 4]; xi = xi0/(4 pi).
inline XiConstant compute_xi(double alpha = 3.0, std::size_t scan_points = kScanPoints) {
  if (!(alpha >= 0.0 && alpha <= 4.0))
    throw DomainError("compute_xi: alpha must lie in [0, 4] (supremum is infinite otherwise)");
  auto ratio = [alpha](double t) { return exchange_x_over_pow(t, alpha); };
  auto grid = [&](std::size_t i) { return log_grid_point(i, scan_points); };
  const auto ext = opt1d::scan_then_refine(ratio, grid, scan_points, kRefineTol);
  // X(t) = 2t^4 + O(t^6): the ratio tends to 2 (alpha = 4) or 0 (alpha < 4) at t -> 0.
  const double limit0 = alpha == 4.0 ? 2.0 : 0.0;
  XiConstant out;
  out.alpha = alpha;
  out.xi0.method = "log-grid scan of X/t^alpha on [1e-8, 1e8] (" + std::to_string(scan_points) +
                   " points) + golden-section refinement; t->0 limit compared";
  if (limit0 >= ext.value) {
    out.xi0.value = limit0;
    out.xi0.argmax = std::nullopt;
  } else {
    out.xi0.value = ext.value;
    out.xi0.argmax = ext.location;
  }
  out.xi = out.xi0.value / (4.0 * kPi);
  return out;
}

/// (1 - cos^4 t - sin^4 t)^2 / (1 - cos^3 t - sin^3 t) on [0, pi/2].
///
/// Evaluated as sin^4(2t) / (2 (u-1)^2 (u+2)) with u = sin t + cos t, which
/// is algebraically identical and keeps full precision near both endpoints.
inline double trig_ratio(double t) {
  if (t <= 0.0 || t >= kPi / 2) return 0.0;
  const double s2 = std::sin(2.0 * t);
  // u - 1 = sin t - 2 sin^2(t/2)
  const double h = std::sin(0.5 * t);
  const double um1 = std::sin(t) - 2.0 * h * h;
  const double u = 1.0 + um1;
  const double s4 = s2 * s2 * s2 * s2;
  return s4 / (2.0 * um1 * um1 * (u + 2.0));
}

inline ExtremalConstant compute_trig_max(std::size_t scan_points = kScanPoints) {
  auto grid = [&](std::size_t i) { return (kPi / 2) * static_cast<double>(i) / (scan_points - 1); };
  const auto ext = opt1d::scan_then_refine(trig_ratio, grid, scan_points, 1e-12);
  return {ext.value, ext.location,
          "uniform scan on [0, pi/2] (" + std::to_string(scan_points) +
              " points, endpoint limits 0) + golden-section refinement"};
}

// ---------------------------------------------------------------------------

/// Named scalar function of t = p/c.
struct ScalarFn {
  std::string name;
  std::function<double(double)> eval;
};

inline std::vector<ScalarFn> scalar_functions() {
  return {
      {"f_sq", [](double t) { return f_sq(t); }},
      {"F", [](double t) { return F(t); }},
      {"ttf", [](double t) { return ttf(t); }},
      {"X", [](double t) { return exchange_x(t); }},
      {"arsinh", [](double t) { require_nonneg(t, "arsinh"); return std::asinh(t); }},
  };
}

} // namespace specfun
} // namespace tfwd
