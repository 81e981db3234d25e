#pragma once

// Named numerical certificates. Each scans one inequality or identity and
// reports the worst margin: relative slack for inequalities (>= 0 holds),
// minus the absolute deviation for identities. A certificate passes when its
// worst margin is >= -1e-12.

#include <tfwd/bounds.hpp>
#include <tfwd/errors.hpp>
#include <tfwd/model.hpp>
#include <tfwd/quadrature.hpp>
#include <tfwd/random_density.hpp>
#include <tfwd/specfun.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace tfwd::certify {

inline constexpr double kPassTolerance = 1e-12;
inline constexpr std::size_t kMinResolution = 100;
inline constexpr std::size_t kDefaultResolution = 10000;

struct CertificateReport {
  std::string name;
  std::string statement;
  std::string scan_description;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string worst_location;
  std::size_t samples = 0;
  bool passed = false;
  std::string note;
};

namespace detail {

inline std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

inline std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

inline std::string fmt(const char* f, double a, double b, double c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

/// Tracks the smallest margin and where it occurred.
struct Worst {
  CertificateReport& rep;
  void operator()(double margin, const std::string& where) {
    ++rep.samples;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_location = where;
    }
  }
  template <class Where>
  void lazy(double margin, Where&& where) {
    ++rep.samples;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_location = where();
    }
  }
};

inline double rel_margin(double big, double small) {
  const double scale = std::max(std::abs(big), std::abs(small));
  return scale > 0.0 ? (big - small) / scale : 0.0;
}

inline std::size_t density_count(std::size_t resolution) {
  return std::min<std::size_t>(50, std::max<std::size_t>(10, resolution / 200));
}

/// Random model parameters and density for sample k.
struct Sample {
  ModelParams params;
  RadialDensity rho;
  std::string label;
};

inline Sample draw_sample(Rng& rng, std::size_t k, double kappa = 0.0) {
  const double Z = rng.log_uniform(1.0, 50.0);
  const ModelParams p = kappa > 0.0 ? ModelParams::from_kappa(Z, kappa) : ModelParams{Z, rng.log_uniform(0.3, 300.0), kDefaultLambda};
  auto rho = random_density(rng, Z, RadialGrid::for_charge(Z));
  const std::string label = "density #" + std::to_string(k) + fmt(" (Z = %.6g, c = %.6g, N = %.6g)", Z, p.c, mass(rho));
  return {p, std::move(rho), label};
}

inline double scan_t(std::size_t i, std::size_t n) { return specfun::log_grid_point(i, n, 1e-8, 1e8); }

} // namespace detail

// ---------------------------------------------------------------------------
// Scalar certificates

inline void cert_F_lower(CertificateReport& r, std::size_t n, std::uint64_t) {
  r.statement = "F(t) >= t sqrt(arsinh t) / 2 for t > 0";
  r.scan_description = std::to_string(n) + " log-spaced t in [1e-8, 1e8]";
  detail::Worst w{r};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = detail::scan_t(i, n);
    w.lazy(detail::rel_margin(specfun::F(t), 0.5 * t * std::sqrt(std::asinh(t))), [&] { return detail::fmt("t = %.17g", t); });
  }
}

inline void cert_ttf_ratios(CertificateReport& r, std::size_t n, std::uint64_t) {
  r.statement = "T(t)/t^5 decreases from 4/5 and T(t)/t^4 increases to 2 on t > 0";
  r.scan_description = std::to_string(n) + " log-spaced t in [1e-8, 1e8]; consecutive differences and the limit values as bounds";
  detail::Worst w{r};
  double prev5 = 0.8, prev4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = detail::scan_t(i, n);
    const double r5 = specfun::ttf_over_t5(t), r4 = specfun::ttf_over_t4(t);
    auto where = [&] { return detail::fmt("t = %.17g", t); };
    w.lazy(detail::rel_margin(prev5, r5), where);
    w.lazy(detail::rel_margin(r4, prev4), where);
    w.lazy(detail::rel_margin(2.0, r4), where);
    prev5 = r5;
    prev4 = r4;
  }
}

inline void cert_f_sq_linear(CertificateReport& r, std::size_t n, std::uint64_t) {
  const auto mu = specfun::compute_mu();
  r.statement = "f(t)^2 <= mu t with mu = max f^2/t";
  r.scan_description = std::to_string(n) + " log-spaced t in [1e-8, 1e8]; mu = " + detail::fmt("%.12g", mu.value);
  detail::Worst w{r};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = detail::scan_t(i, n);
    w.lazy(detail::rel_margin(mu.value * t, specfun::f_sq(t)), [&] { return detail::fmt("t = %.17g", t); });
  }
}

inline void cert_X_cubic(CertificateReport& r, std::size_t n, std::uint64_t) {
  const auto xi = specfun::compute_xi(3.0);
  r.statement = "X(t) <= xi0 t^3 with xi0 = max X/t^3";
  r.scan_description = std::to_string(n) + " log-spaced t in [1e-8, 1e8]; xi0 = " + detail::fmt("%.12g", xi.xi0.value);
  detail::Worst w{r};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = detail::scan_t(i, n);
    // X/t^3 <= xi0, compared without forming t^3 X
    w.lazy(detail::rel_margin(xi.xi0.value, specfun::exchange_x_over_pow(t, 3.0)), [&] { return detail::fmt("t = %.17g", t); });
  }
}

/// T(t) - (2 t^4 - (8/3) t^3), free of the cancellation between its terms.
inline double ttf_quartic_gap(double t) {
  if (t < 1.0) return specfun::ttf(t) - 2.0 * std::pow(t, 4) + 8.0 / 3.0 * std::pow(t, 3);
  // T = t sqrt(1+t^2)(2t^2 + 1) - (8/3) t^3 - arsinh(t) for the closed form;
  // subtract 2t^4 - (8/3)t^3 with q = sqrt(1+t^2): t[2t^2/(q+t) + q] - arsinh t
  const double q = std::sqrt(1.0 + t * t);
  return t * (2.0 * t * t / (q + t) + q) - std::asinh(t);
}

inline void cert_ttf_quartic(CertificateReport& r, std::size_t n, std::uint64_t) {
  r.statement = "T(t) >= 2 t^4 - (8/3) t^3 for t >= 0";
  r.scan_description = std::to_string(n) + " log-spaced t in [1e-8, 1e8]; margin = gap / T(t)";
  detail::Worst w{r};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = detail::scan_t(i, n);
    w.lazy(ttf_quartic_gap(t) / specfun::ttf(t), [&] { return detail::fmt("t = %.17g", t); });
  }
}

inline void cert_a_scaling(CertificateReport& r, std::size_t n, std::uint64_t) {
  const std::size_t nt = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
  const std::size_t nf = nt;
  r.statement = "a(f t) <= f^3 a(t) for f in [0, 1], t > 0";
  r.scan_description = std::to_string(nt) + " log-spaced t in [1e-4, 1e4] x " + std::to_string(nf) +
                       " uniform f in (0, 1] x c in {0.5, 1, 137.036}";
  detail::Worst w{r};
  for (double c : {0.5, 1.0, 137.036}) {
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = specfun::log_grid_point(i, nt, 1e-4, 1e4);
      const double at = specfun::func_a(t, c);
      for (std::size_t j = 1; j <= nf; ++j) {
        const double f = static_cast<double>(j) / nf;
        w.lazy(detail::rel_margin(f * f * f * at, specfun::func_a(f * t, c)),
               [&] { return detail::fmt("t = %.17g, f = %.17g, c = %.6g", t, f, c); });
      }
    }
  }
}

inline void cert_a_derivatives(CertificateReport& r, std::size_t n, std::uint64_t) {
  r.statement = "a', a'', a''', a'''' >= 0 on t > 0";
  const std::size_t nt = std::max<std::size_t>(kMinResolution / 3, n / 3);
  r.scan_description = std::to_string(nt) + " log-spaced t in [1e-2, 1e3] x c in {0.5, 1, 137.036}; 4th-order central differences "
                       "with h = 1e-3 max(1, t); margin = a^(k)(t) t^k / a(t)";
  detail::Worst w{r};
  for (double c : {0.5, 1.0, 137.036})
  for (std::size_t i = 0; i < nt; ++i) {
    auto a = [c](double t) { return specfun::func_a(t, c); };
    const double t = specfun::log_grid_point(i, nt, 1e-2, 1e3);
    const double h = 1e-3 * std::max(1.0, t);
    std::array<double, 7> v{};
    for (int k = -3; k <= 3; ++k) v[k + 3] = a(t + k * h);
    const double d1 = (-v[5] + 8 * v[4] - 8 * v[2] + v[1]) / (12 * h);
    const double d2 = (-v[5] + 16 * v[4] - 30 * v[3] + 16 * v[2] - v[1]) / (12 * h * h);
    const double d3 = (-v[6] + 8 * v[5] - 13 * v[4] + 13 * v[2] - 8 * v[1] + v[0]) / (8 * h * h * h);
    const double d4 = (-v[6] + 12 * v[5] - 39 * v[4] + 56 * v[3] - 39 * v[2] + 12 * v[1] - v[0]) / (6 * h * h * h * h);
    const double scale = v[3];
    const std::array<double, 4> ds{d1 * t / scale, d2 * t * t / scale, d3 * t * t * t / scale, d4 * t * t * t * t / scale};
    for (int k = 0; k < 4; ++k) w.lazy(ds[k], [&] { return detail::fmt("t = %.17g, c = %.6g, derivative order %.0f", t, c, k + 1.0); });
  }
}

inline void cert_angular_identity(CertificateReport& r, std::size_t n, std::uint64_t seed) {
  r.statement = "int_S dw/4pi (w.x - alpha)_+ = (|x|/4) [(1 - alpha/|x|)_+]^2";
  const std::size_t cases = std::max<std::size_t>(20, n / 50);
  r.scan_description = std::to_string(cases) +
                       " random (x, alpha) pairs, |x| in [1e-2, 1e2], alpha/|x| in [0, 1.5] plus alpha = 0 and alpha >= |x| cases; "
                       "product Gauss grid (40 x 2 panels in theta split at the kink, 64-point trapezoid in phi) with pole along x; "
                       "margin = -|difference|";
  detail::Worst w{r};
  Rng rng(seed ^ 0x5eedULL);
  const auto gl = quad::gauss_legendre(40);
  constexpr int n_phi = 64;
  auto sphere_average = [&](const std::array<double, 3>& x, double alpha) {
    const double len = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    // orthonormal frame (e1, e2, e3 = x/|x|)
    const std::array<double, 3> e3{x[0] / len, x[1] / len, x[2] / len};
    std::array<double, 3> a = std::abs(e3[0]) < 0.9 ? std::array<double, 3>{1, 0, 0} : std::array<double, 3>{0, 1, 0};
    const double proj = a[0] * e3[0] + a[1] * e3[1] + a[2] * e3[2];
    std::array<double, 3> e1{a[0] - proj * e3[0], a[1] - proj * e3[1], a[2] - proj * e3[2]};
    const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (auto& v : e1) v /= n1;
    const std::array<double, 3> e2{e3[1] * e1[2] - e3[2] * e1[1], e3[2] * e1[0] - e3[0] * e1[2], e3[0] * e1[1] - e3[1] * e1[0]};
    // cos(theta) = u; integrand vanishes for u < alpha/|x|
    const double kink = std::clamp(alpha / len, -1.0, 1.0);
    double total = 0.0;
    for (auto [lo, hi] : {std::pair{-1.0, kink}, std::pair{kink, 1.0}}) {
      if (hi <= lo) continue;
      for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
        const double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[k];
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        double ring = 0.0;
        for (int j = 0; j < n_phi; ++j) {
          const double phi = 2.0 * kPi * j / n_phi;
          std::array<double, 3> om;
          for (int d = 0; d < 3; ++d) om[d] = s * std::cos(phi) * e1[d] + s * std::sin(phi) * e2[d] + u * e3[d];
          ring += std::max(0.0, om[0] * x[0] + om[1] * x[1] + om[2] * x[2] - alpha);
        }
        total += 0.5 * (hi - lo) * gl.weights[k] * ring / n_phi;
      }
    }
    return 0.5 * total;  // dw/4pi = du dphi / 4pi
  };
  auto exact = [](double len, double alpha) {
    const double v = std::max(0.0, 1.0 - alpha / len);
    return 0.25 * len * v * v;
  };
  auto check = [&](const std::array<double, 3>& x, double alpha) {
    const double len = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double diff = sphere_average(x, alpha) - exact(len, alpha);
    w.lazy(-std::abs(diff), [&] { return detail::fmt("|x| = %.17g, alpha = %.17g, x_z/|x| = %.6g", len, alpha, x[2] / len); });
  };
  check({0.0, 0.0, 1.0}, 0.0);
  check({1.0, 0.0, 0.0}, 0.0);
  check({0.0, 2.0, 0.0}, 3.0);
  for (std::size_t k = 0; k < cases; ++k) {
    const double len = rng.log_uniform(1e-2, 1e2);
    const double zc = rng.uniform(-1.0, 1.0), ph = rng.uniform(0.0, 2.0 * kPi);
    const double sc = std::sqrt(1.0 - zc * zc);
    const std::array<double, 3> x{len * sc * std::cos(ph), len * sc * std::sin(ph), len * zc};
    check(x, len * rng.uniform(0.0, 1.5));
  }
}

inline void cert_trig_max(CertificateReport& r, std::size_t n, std::uint64_t) {
  const auto ext = specfun::compute_trig_max(std::max<std::size_t>(n, 100));
  const double target = (2.0 + std::sqrt(2.0)) / 4.0;
  r.statement = "max over t in [0, pi/2] of (1 - cos^4 t - sin^4 t)^2 / (1 - cos^3 t - sin^3 t) = (2 + sqrt 2)/4";
  r.scan_description = ext.method + "; margin = -|max - (2+sqrt2)/4|, plus the scan values as lower bounds";
  r.note = "the localization error inequality itself is not evaluated; it is verified only through its scalar ingredients "
           "(this constant and the c1/c2 coefficients)";
  detail::Worst w{r};
  w(-std::abs(ext.value - target), detail::fmt("t = %.17g (value %.17g)", ext.argmax.value_or(0.0), ext.value));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (kPi / 2) * static_cast<double>(i) / (n - 1);
    w.lazy(detail::rel_margin(target, specfun::trig_ratio(t)), [&] { return detail::fmt("t = %.17g", t); });
  }
}

// ---------------------------------------------------------------------------
// Density certificates

inline void cert_hardy_weizsacker(CertificateReport& r, std::size_t n, std::uint64_t seed) {
  const std::size_t count = detail::density_count(n);
  r.statement = "W(rho) >= 3^(5/3) lambda c / (2^7 pi^(2/3)) H(rho), H = int rho^(2/3) arsinh(p/c) / |x|^2";
  r.scan_description = std::to_string(count) + " random radial densities (sums of 1-4 exponentials/Gaussians, seed " +
                       std::to_string(seed) + ")";
  detail::Worst w{r};
  Rng rng(seed);
  for (std::size_t k = 0; k < count; ++k) {
    const auto s = detail::draw_sample(rng, k);
    const double W = weizsacker_energy(s.rho, s.params);
    const double H = bounds::hardy_constant() * s.params.lambda * s.params.c * hardy_functional(s.rho, s.params.c);
    w(detail::rel_margin(W, H), s.label);
  }
}

inline void cert_theorem1(CertificateReport& r, std::size_t n, std::uint64_t seed) {
  const std::size_t count = detail::density_count(n);
  r.statement = "TFWD(rho) >= -4 s0^5/(5 T(s0)) e_TF Z^(7/3) - xi c N";
  r.scan_description = std::to_string(count) + " random radial densities, kappa cycling through {0.1, 1, 5}, Z in [1, 50] (seed " +
                       std::to_string(seed) + "); margin = (E - bound)/|bound|";
  detail::Worst w{r};
  Rng rng(seed + 1);
  const std::array<double, 3> kappas{0.1, 1.0, 5.0};
  for (std::size_t k = 0; k < count; ++k) {
    const auto s = detail::draw_sample(rng, k, kappas[k % 3]);
    const double E = total_energy(s.rho, s.params).total;
    const double b = bounds::lower_bound(s.params, mass(s.rho)).bound_value;
    w((E - b) / std::abs(b), s.label + detail::fmt(", kappa = %.3g", kappas[k % 3]));
  }
}

inline void cert_nonrel_limit(CertificateReport& r, std::size_t n, std::uint64_t seed) {
  const std::size_t count = detail::density_count(n);
  r.statement = "W, TF and X approach their non-relativistic forms as c grows";
  r.scan_description = std::to_string(count) +
                       " random densities; c = 100 * 2^k, k = 0..4; margin = (d(c) - d(2c)) / d(c) with d the term-wise distance";
  detail::Worst w{r};
  Rng rng(seed + 2);
  for (std::size_t k = 0; k < count; ++k) {
    const double Z = rng.log_uniform(1.0, 20.0);
    const auto rho = random_density(rng, Z, RadialGrid::for_charge(Z));
    ModelParams p{Z, 100.0, kDefaultLambda};
    const auto nr = nonrel_breakdown(rho, p);
    std::array<double, 3> prev{};
    for (int j = 0; j <= 4; ++j) {
      p.c = 100.0 * std::pow(2.0, j);
      const std::array<double, 3> d{std::abs(weizsacker_energy(rho, p) - nr.weizsacker), std::abs(tf_energy(rho, p) - nr.thomas_fermi),
                                    std::abs(exchange_energy(rho, p) - nr.exchange)};
      if (j > 0) {
        static constexpr std::array<const char*, 3> names{"W", "TF", "X"};
        for (int term = 0; term < 3; ++term)
          w.lazy(prev[term] > 0.0 ? (prev[term] - d[term]) / prev[term] : 0.0, [&] {
            return "density #" + std::to_string(k) + detail::fmt(" (Z = %.6g), c = %.6g, term ", Z, p.c) + names[term];
          });
      }
      prev = d;
    }
  }
}

inline void cert_tfl_split(CertificateReport& r, std::size_t n, std::uint64_t seed) {
  const std::size_t count = detail::density_count(n);
  const std::size_t ns = 25;
  r.statement = "TF(rho) >= (3/10) gamma_e(s) int_{p<sc} rho^(5/3) + (3/8)(T(s)/s^4) gamma_TF^(1/2) c T_s(rho) for every s > 0";
  r.scan_description = std::to_string(count) + " random densities x " + std::to_string(ns) + " log-spaced s in [1e-3, 1e3]";
  detail::Worst w{r};
  Rng rng(seed + 3);
  for (std::size_t k = 0; k < count; ++k) {
    const auto smp = detail::draw_sample(rng, k);
    const double tf = tf_energy(smp.rho, smp.params);
    for (std::size_t j = 0; j < ns; ++j) {
      const double s = specfun::log_grid_point(j, ns, 1e-3, 1e3);
      const double gamma_e = 1.25 * specfun::ttf_over_t5(s) * kGammaTF;
      const double rhs = 0.3 * gamma_e * low_density_l53(smp.rho, s, smp.params.c) +
                         0.375 * specfun::ttf_over_t4(s) * std::sqrt(kGammaTF) * smp.params.c * tg(smp.rho, s, smp.params.c);
      w(detail::rel_margin(tf, rhs), smp.label + detail::fmt(", s = %.6g", s));
    }
  }
}

// ---------------------------------------------------------------------------

using CertificateFn = void (*)(CertificateReport&, std::size_t, std::uint64_t);

struct Registration {
  const char* name;
  CertificateFn run;
};

inline const std::vector<Registration>& registry() {
  static const std::vector<Registration> reg{
      {"F_lower", cert_F_lower},
      {"ttf_ratios", cert_ttf_ratios},
      {"f_sq_linear", cert_f_sq_linear},
      {"X_cubic", cert_X_cubic},
      {"ttf_quartic", cert_ttf_quartic},
      {"a_scaling", cert_a_scaling},
      {"a_derivatives", cert_a_derivatives},
      {"angular_identity", cert_angular_identity},
      {"hardy_weizsacker", cert_hardy_weizsacker},
      {"theorem1", cert_theorem1},
      {"trig_max", cert_trig_max},
      {"nonrel_limit", cert_nonrel_limit},
      {"tfl_split", cert_tfl_split},
  };
  return reg;
}

inline std::vector<std::string> certificate_names() {
  std::vector<std::string> out;
  for (const auto& r : registry()) out.emplace_back(r.name);
  return out;
}

inline CertificateReport run_certificate(const std::string& name, std::size_t resolution = kDefaultResolution, std::uint64_t seed = 0) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const Registration& r) { return name == r.name; });
  if (it == reg.end()) throw RegistryError("unknown certificate '" + name + "'");
  if (resolution < kMinResolution)
    throw RegistryError("certificate '" + name + "': resolution " + std::to_string(resolution) + " is below the minimum " +
                        std::to_string(kMinResolution));
  CertificateReport rep;
  rep.name = name;
  try {
    it->run(rep, resolution, seed);
  } catch (const std::exception& ex) {
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    rep.worst_location = std::string("evaluation error: ") + ex.what();
  }
  rep.passed = rep.worst_margin >= -kPassTolerance;
  return rep;
}

struct SuiteResult {
  std::vector<CertificateReport> reports;
  bool all_passed = true;
};

inline SuiteResult run_all(std::size_t resolution = kDefaultResolution, std::uint64_t seed = 0) {
  SuiteResult out;
  for (const auto& r : registry()) {
    out.reports.push_back(run_certificate(r.name, resolution, seed));
    out.all_passed = out.all_passed && out.reports.back().passed;
  }
  return out;
}

} // namespace tfwd::certify
