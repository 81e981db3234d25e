#include <catch2/catch_amalgamated.hpp>

#include <tfwd/specfun.hpp>

#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace tfwd;
using namespace tfwd::specfun;
using Catch::Approx;

namespace {

double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

} // namespace

TEST_CASE("f_sq: values, monotonicity and domain", "[specfun]") {
  CHECK(f_sq(0.0) == 0.0);
  // closed form 2^{-1/2} + arsinh(1), evaluated at 40 digits
  CHECK(rel_err(f_sq(1.0), 1.5884803682060905) < 1e-15);

  double prev = f_sq(0.0);
  for (std::size_t i = 0; i < 2000; ++i) {
    const double t = log_grid_point(i, 2000, 1e-8, 1e8);
    const double v = f_sq(t);
    CHECK(v > prev);
    prev = v;
  }

  CHECK_THROWS_AS(f_sq(-1e-3), DomainError);
  CHECK_THROWS_AS(f_sq(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(f_sq(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("scalar functions match a 100-digit oracle", "[specfun][oracle]") {
  double worst_fsq = 0, worst_ttf = 0, worst_x = 0;
  for (std::size_t i = 0; i < 400; ++i) {
    const double t = log_grid_point(i, 400, 1e-6, 1e6);
    worst_fsq = std::max(worst_fsq, rel_err(f_sq(t), oracle::f_sq(t)));
    worst_ttf = std::max(worst_ttf, rel_err(ttf(t), oracle::ttf(t)));
    const double xref = oracle::exchange_x(t);
    // X changes sign near t ~ 3; measure relative to the size of its parts there
    const double scale = std::max(std::abs(xref), 2.0 * t * t * t * t * 1e-3);
    worst_x = std::max(worst_x, std::abs(exchange_x(t) - xref) / scale);
  }
  INFO("f_sq " << worst_fsq << " ttf " << worst_ttf << " X " << worst_x);
  CHECK(worst_fsq < 1e-10);
  CHECK(worst_ttf < 1e-10);
  CHECK(worst_x < 1e-10);
}

TEST_CASE("every ScalarFn is finite on [0, 1e6]", "[specfun]") {
  for (const auto& fn : scalar_functions()) {
    INFO(fn.name);
    CHECK(std::isfinite(fn.eval(0.0)));
    CHECK(std::isfinite(fn.eval(1e6)));
    for (std::size_t i = 0; i < 300; ++i) {
      const double t = log_grid_point(i, 300, 1e-12, 1e6);
      CHECK(std::isfinite(fn.eval(t)));
    }
    CHECK_THROWS_AS(fn.eval(-1.0), DomainError);
  }
}

TEST_CASE("F: interpolant accuracy and inverse", "[specfun][F]") {
  CHECK(F(0.0) == 0.0);
  CHECK(FInterpolant::instance().certified_error() <= 1e-10);

  // brute-force oracle at t = 1: composite Simpson, 10^6 subintervals
  const double simpson = oracle::F_simpson(1.0, 1000000);
  CHECK(std::abs(F(1.0) - simpson) < 1e-8);
  // 40-digit value of the substituted integral
  CHECK(rel_err(F(1.0), 0.7718098218967907) < 1e-12);

  double worst = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    const double t = log_grid_point(i, 200, 1e-9, 1e9);
    worst = std::max(worst, rel_err(F(t), oracle::F_gauss_kronrod(t)));
  }
  INFO("worst relative deviation from Gauss-Kronrod " << worst);
  CHECK(worst < 1e-10);

  // beyond the tabulated range F is integrated directly; continuity check
  const double edge = std::ldexp(1.0, FInterpolant::kMaxExp);
  CHECK(rel_err(F(edge * (1 + 1e-12)), F(edge * (1 - 1e-12))) < 1e-10);
  CHECK(F(4.0 * edge) > F(edge));

  for (std::size_t i = 0; i < 500; ++i) {
    const double t = log_grid_point(i, 500, 1e-10, 1e13);
    CHECK(rel_err(F_inverse(F(t)), t) < 1e-12);
  }
  CHECK(F_inverse(0.0) == 0.0);
  CHECK_THROWS_AS(F(-1.0), DomainError);
  CHECK_THROWS_AS(F_inverse(-1.0), DomainError);
}

TEST_CASE("F lower bound t*sqrt(arsinh t)/2", "[specfun][F]") {
  for (std::size_t i = 0; i < 2000; ++i) {
    const double t = log_grid_point(i, 2000, 1e-6, 1e6);
    CHECK(F(t) >= t * std::sqrt(std::asinh(t)) / 2.0);
  }
}

TEST_CASE("T^TF: values, limits and series crossover", "[specfun][ttf]") {
  CHECK(ttf(0.0) == 0.0);
  CHECK(rel_err(ttf(1.0), 0.6946004334330755) < 1e-14);
  CHECK(std::abs(ttf_over_t5(1e-4) - 0.8) < 1e-6);
  CHECK(std::abs(ttf_over_t4(1e4) - 2.0) < 1e-3);
  CHECK(ttf_over_t5(0.0) == Approx(0.8).epsilon(1e-15));
  CHECK(ttf_over_t4(0.0) == 0.0);

  // series and closed form agree in the window around the crossover
  for (double t = 0.5 * kSeriesCrossover; t <= 2.0 * kSeriesCrossover; t *= 1.01) {
    const double t5 = std::pow(t, 5);
    CHECK(rel_err(detail::ttf_series_over_t5(t) * t5, detail::ttf_direct(t)) < 1e-10);
  }
  // the naive formula is useless at small t, the series is not
  CHECK(rel_err(ttf(1e-4), oracle::ttf(1e-4)) < 1e-13);

  // monotone ratios and the quartic lower bound
  double prev5 = ttf_over_t5(1e-8), prev4 = ttf_over_t4(1e-8);
  for (std::size_t i = 1; i < 3000; ++i) {
    const double t = log_grid_point(i, 3000);
    const double r5 = ttf_over_t5(t), r4 = ttf_over_t4(t);
    CHECK(r5 <= prev5);
    CHECK(r4 >= prev4);
    prev5 = r5;
    prev4 = r4;
    if (t < 1e6) CHECK(ttf(t) >= 2 * std::pow(t, 4) - 8.0 / 3.0 * std::pow(t, 3));
  }
  CHECK_THROWS_AS(ttf(-2.0), DomainError);
}

TEST_CASE("T^TF derivative matches finite differences", "[specfun][ttf]") {
  for (double t : {1e-3, 0.1, 0.7, 3.0, 40.0}) {
    const double h = 1e-5 * t;
    const double fd = (ttf(t + h) - ttf(t - h)) / (2 * h);
    CHECK(rel_err(ttf_prime(t), fd) < 1e-7);
  }
}

TEST_CASE("X: values and limits", "[specfun][X]") {
  CHECK(exchange_x(0.0) == 0.0);
  CHECK(rel_err(exchange_x(1.0), 1.1482446819956782) < 1e-14);
  // X = 2t^4 - (4/3) t^6 + O(t^8)
  const double t = 1e-3;
  CHECK(rel_err(exchange_x(t), 2 * std::pow(t, 4) - 4.0 / 3.0 * std::pow(t, 6)) < 1e-10);
  for (double s = 0.5 * kSeriesCrossover; s <= 2.0 * kSeriesCrossover; s *= 1.01) {
    const double direct = s * std::hypot(1.0, s) - std::asinh(s);
    CHECK(rel_err(detail::g_series_over_t3(s) * s * s * s, direct) < 1e-10);
  }
  CHECK(exchange_x(100.0) < 0.0);
  CHECK(exchange_x(1e4) < exchange_x(1e3));
  for (double s : {1e-3, 0.2, 1.0, 5.0}) {
    const double h = 1e-5 * s;
    const double fd = (exchange_x(s + h) - exchange_x(s - h)) / (2 * h);
    CHECK(rel_err(exchange_x_prime_over_t2(s) * s * s, fd) < 1e-6);
  }
}

TEST_CASE("a and b", "[specfun][ab]") {
  CHECK(func_a(0.0, 1.0) == 0.0);
  CHECK(func_b(0.0, 1.0) == 0.0);
  CHECK(rel_err(func_b(1.0, 1.0), 1.0 / (4.0 * kPi * kPi * kPi)) < 1e-15);
  CHECK(rel_err(func_b(1.0, 1.0), 0.0080628836082998723) < 1e-14);

  for (double c : {0.5, 1.0, 137.036}) {
    for (std::size_t i = 0; i < 200; ++i) {
      const double t = log_grid_point(i, 200, 1e-4, 1e3);
      const double c4 = std::pow(c, 4);
      const double lhs = func_a(t, c) - func_b(t, c);
      const double rhs = c4 * c / (8 * kPi * kPi) * ttf(t) - c4 / (8 * kPi * kPi * kPi) * exchange_x(t);
      const double scale = std::max(func_a(t, c), func_b(t, c));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    }
  }
  for (double t = 0.05; t <= 100.0; t *= 1.3)
    for (double f = 0.0; f <= 1.0; f += 0.05)
      CHECK(func_a(f * t, 1.0) <= f * f * f * func_a(t, 1.0) * (1 + 1e-13));

  CHECK_THROWS_AS(func_a(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(func_b(-1.0, 1.0), DomainError);
}

TEST_CASE("mu = max f^2/t", "[specfun][extremal]") {
  const auto mu = compute_mu();
  CHECK(std::abs(mu.value - 1.66) <= 0.01);
  REQUIRE(mu.argmax.has_value());
  CHECK(std::abs(*mu.argmax - 1.45) <= 0.05);
  // deterministic
  CHECK(compute_mu().value == mu.value);
  // f^2 <= mu t on a scan, tight near the argmax
  for (std::size_t i = 0; i < 5000; ++i) {
    const double t = log_grid_point(i, 5000);
    CHECK(f_sq(t) <= mu.value * t * (1 + 1e-14));
  }
  CHECK(mu.value * *mu.argmax - f_sq(*mu.argmax) <= 1e-14);
  // tail decreases
  CHECK(f_sq(1e6) / 1e6 < f_sq(1e3) / 1e3);
}

TEST_CASE("xi0(alpha) = sup X/t^alpha", "[specfun][extremal]") {
  const auto xi = compute_xi(3.0);
  CHECK(std::abs(xi.xi0.value - 1.15) <= 0.01);
  CHECK(std::abs(xi.xi - 0.0914) <= 0.001);
  CHECK(xi.xi == Approx(xi.xi0.value / (4 * kPi)).epsilon(1e-15));
  for (std::size_t i = 0; i < 5000; ++i) {
    const double t = log_grid_point(i, 5000);
    CHECK(exchange_x(t) <= xi.xi0.value * t * t * t * (1 + 1e-14));
  }

  const auto four = compute_xi(4.0);
  CHECK(four.xi0.value == 2.0);
  CHECK_FALSE(four.xi0.argmax.has_value());

  const auto zero = compute_xi(0.0);
  CHECK(std::isfinite(zero.xi0.value));
  CHECK(zero.xi0.value > 0.0);
  REQUIRE(zero.xi0.argmax.has_value());
  CHECK(zero.xi0.value >= exchange_x(*zero.xi0.argmax));

  CHECK_THROWS_AS(compute_xi(4.5), DomainError);
  CHECK_THROWS_AS(compute_xi(-0.1), DomainError);
}

TEST_CASE("trigonometric maximum", "[specfun][extremal]") {
  const auto m = compute_trig_max();
  CHECK(std::abs(m.value - (2 + std::sqrt(2.0)) / 4) <= 1e-9);
  REQUIRE(m.argmax.has_value());
  CHECK(std::abs(*m.argmax - kPi / 4) < 1e-6);
  // value at pi/4 equals (1/4)/(1 - 1/sqrt 2)
  CHECK(rel_err(trig_ratio(kPi / 4), 0.25 / (1 - 1 / std::sqrt(2.0))) < 1e-14);
  // stable form equals the defining expression away from the endpoints
  for (double t = 0.05; t < kPi / 2 - 0.05; t += 0.01) {
    const double c = std::cos(t), s = std::sin(t);
    const double num = 1 - std::pow(c, 4) - std::pow(s, 4);
    const double naive = num * num / (1 - std::pow(c, 3) - std::pow(s, 3));
    CHECK(rel_err(trig_ratio(t), naive) < 1e-11);
  }
  CHECK(trig_ratio(1e-6) < 1e-10);
  CHECK(trig_ratio(kPi / 2 - 1e-6) < 1e-10);
  CHECK(trig_ratio(0.0) == 0.0);
}
