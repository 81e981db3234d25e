#pragma once

// Seeded family of smooth radial test densities: sums of 1-4 exponentials
// a e^{-r/l} or Gaussians a e^{-(r/l)^2} with log-uniform length scales l and
// log-uniform weights, normalized to a log-uniform mass.
//
// The generator only uses raw 64-bit Mersenne twister output so that a seed
// produces the same densities with every standard library.

#include <tfwd/model.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace tfwd {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

private:
  std::mt19937_64 engine_;
};

struct DensityComponent {
  bool gaussian = false;
  double weight = 1.0;
  double length = 1.0;
};

struct RandomDensitySpec {
  std::vector<DensityComponent> parts;
  double target_mass = 1.0;
};

/// Draw a density description. Length scales span [0.05, 5]/Z^(1/3) (Gaussians)
/// or [0.05, 2]/Z^(1/3) (exponentials, keeping the tail beyond r = 50 negligible);
/// mass spans [0.2, 2] Z.
inline RandomDensitySpec draw_density_spec(Rng& rng, double Z) {
  RandomDensitySpec spec;
  const int n = rng.integer(1, 4);
  const double scale = 1.0 / std::cbrt(Z);
  for (int k = 0; k < n; ++k) {
    DensityComponent part;
    part.gaussian = rng.uniform() < 0.5;
    part.weight = rng.log_uniform(1e-2, 1.0);
    part.length = rng.log_uniform(0.05, part.gaussian ? 5.0 : 2.0) * scale;
    spec.parts.push_back(part);
  }
  spec.target_mass = rng.log_uniform(0.2, 2.0) * Z;
  return spec;
}

inline RadialDensity realize(const RandomDensitySpec& spec, const RadialGrid& grid) {
  auto shape = [&](double r) {
    double v = 0.0;
    for (const auto& p : spec.parts) {
      const double x = r / p.length;
      // normalized profiles: unit mass each
      if (p.gaussian)
        v += p.weight * std::exp(-x * x) / (std::pow(kPi, 1.5) * p.length * p.length * p.length);
      else
        v += p.weight * std::exp(-x) / (8.0 * kPi * p.length * p.length * p.length);
    }
    return v;
  };
  auto rho = RadialDensity::from_function(grid, shape);
  return rho.scaled(spec.target_mass / mass(rho));
}

inline RadialDensity random_density(Rng& rng, double Z, const RadialGrid& grid) {
  return realize(draw_density_spec(rng, Z), grid);
}

/// Normalized exponential (N alpha^3 / 8 pi) e^{-alpha r}.
inline RadialDensity exponential_density(const RadialGrid& grid, double N, double alpha) {
  return RadialDensity::from_function(grid, [=](double r) {
    return N * alpha * alpha * alpha / (8.0 * kPi) * std::exp(-alpha * r);
  });
}

/// Hydrogenic (N Z^3 / pi) e^{-2 Z r}.
inline RadialDensity hydrogenic_density(const RadialGrid& grid, double N, double Z) {
  return exponential_density(grid, N, 2.0 * Z);
}

/// Normalized Gaussian N (a/pi)^{3/2} e^{-a r^2}.
inline RadialDensity gaussian_density(const RadialGrid& grid, double N, double a) {
  return RadialDensity::from_function(grid, [=](double r) {
    return N * std::pow(a / kPi, 1.5) * std::exp(-a * r * r);
  });
}

} // namespace tfwd
