#include <catch2/catch_amalgamated.hpp>

#include <tfwd/solver.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace tfwd;
using solver::MassMode;
using solver::MinimizeOptions;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// Largest relative mismatch between the analytic directional derivative and
/// central differences of the discrete energy.
double gradient_mismatch(const solver::DiscreteFunctional& fn, const RadialDensity& rho, Rng& rng) {
  const auto u = fn.u_from_density(rho);
  std::vector<double> g;
  fn.evaluate(u, &g);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    std::vector<double> v(u.size()), up(u.size()), um(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] * rng.uniform(-1.0, 1.0);
    const double h = 1e-5;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] = u[i] + h * v[i];
      um[i] = u[i] - h * v[i];
    }
    const double fd = (fn.evaluate(up) - fn.evaluate(um)) / (2.0 * h);
    double an = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) an += g[i] * v[i];
    worst = std::max(worst, std::abs(fd - an) / std::abs(an));
  }
  return worst;
}

} // namespace

TEST_CASE("analytic gradient matches finite differences", "[solver][gradient]") {
  Rng rng(3);
  for (const ModelParams& p : {ModelParams{1.0, kPhysicalC, kDefaultLambda}, ModelParams::from_kappa(5.0, 1.0),
                               ModelParams{3.0, 0.7, 0.5}}) {
    const solver::DiscreteFunctional fn(p, RadialGrid::for_charge(p.Z));
    const auto& g = fn.grid();
    CHECK(gradient_mismatch(fn, hydrogenic_density(g, p.Z, p.Z), rng) <= 1e-6);
    CHECK(gradient_mismatch(fn, gaussian_density(g, 0.7 * p.Z, 2.0 * p.Z), rng) <= 1e-6);
    CHECK(gradient_mismatch(fn, random_density(rng, p.Z, g), rng) <= 1e-6);
  }
}

TEST_CASE("discrete energy agrees with the model energy", "[solver]") {
  Rng rng(8);
  const auto p = ModelParams::from_kappa(4.0, 0.5);
  const solver::DiscreteFunctional fn(p, RadialGrid::for_charge(p.Z));
  for (int k = 0; k < 5; ++k) {
    const auto rho = random_density(rng, p.Z, fn.grid());
    const auto u = fn.u_from_density(rho);
    CHECK(rel_err(fn.evaluate(u), total_energy(rho, p).total) < 1e-12);
    CHECK(rel_err(fn.mass(u), mass(rho)) < 1e-12);
    // mass gradient against finite differences
    std::vector<double> n;
    fn.evaluate(u, nullptr, &n);
    std::vector<double> up = u, um = u;
    const double h = 1e-6;
    double an = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      up[i] *= 1 + h;
      um[i] *= 1 - h;
      an += n[i] * u[i];
    }
    CHECK(rel_err((fn.mass(up) - fn.mass(um)) / (2 * h), an) < 1e-7);
  }
}

TEST_CASE("preconditioner solve", "[solver]") {
  const solver::DiscreteFunctional fn({2.0, 10.0, kDefaultLambda}, RadialGrid::for_charge(2.0, 300));
  Rng rng(4);
  std::vector<double> b(300);
  for (auto& v : b) v = rng.uniform(-1.0, 1.0);
  const auto x = fn.apply_inverse_preconditioner(b);
  // P is SPD
  double xb = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) xb += x[i] * b[i];
  CHECK(xb > 0.0);
}

TEST_CASE("hydrogen-like minimization", "[solver]") {
  const ModelParams p{1.0, kPhysicalC, kDefaultLambda};
  const auto res = solver::minimize(p, 1.0);
  INFO(res.stop_reason);
  CHECK(res.converged);
  CHECK(std::abs(res.achieved_mass - 1.0) <= solver::kMassTolerance);
  CHECK(res.max_mass_violation <= solver::kMassTolerance);
  // bracketed by the lower bound and the hydrogenic trial energy
  const double trial = total_energy(hydrogenic_density(RadialGrid::for_charge(1.0), 1.0, 1.0), p).total;
  CHECK(res.breakdown.total <= trial);
  CHECK(res.breakdown.total <= -0.35);
  CHECK(res.breakdown.total >= bounds::lower_bound(p, 1.0).bound_value);
  CHECK(res.breakdown.total == Catch::Approx(res.energy_history.back()).epsilon(1e-12));
  for (std::size_t i = 1; i < res.energy_history.size(); ++i) CHECK(res.energy_history[i] < res.energy_history[i - 1]);
  CHECK(res.energy_history.front() == res.seed_energy);
}

TEST_CASE("grid refinement of the converged energy", "[solver][convergence]") {
  const auto p = ModelParams::from_kappa(2.0, 0.5);
  MinimizeOptions coarse, fine;
  fine.grid_size = 2 * coarse.grid_size;
  const double a = solver::minimize(p, 2.0, coarse).breakdown.total;
  const double b = solver::minimize(p, 2.0, fine).breakdown.total;
  CHECK(rel_err(a, b) <= 1e-3);
}

TEST_CASE("seeds and mass modes", "[solver]") {
  const auto p = ModelParams::from_kappa(3.0, 0.3);
  MinimizeOptions hyd, tfs, atm;
  tfs.seed_profile = solver::SeedProfile::thomas_fermi;
  atm.mass_mode = MassMode::at_most;
  const auto a = solver::minimize(p, 3.0, hyd);
  const auto b = solver::minimize(p, 3.0, tfs);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(rel_err(a.breakdown.total, b.breakdown.total) < 1e-6);
  CHECK(b.breakdown.total <= b.seed_energy);

  const auto c = solver::minimize(p, 3.0, atm);
  CHECK(c.achieved_mass <= 3.0 + solver::kMassTolerance);
  CHECK(c.breakdown.total <= a.breakdown.total + 1e-8);

  // custom seed from a density file
  const auto path = (std::filesystem::temp_directory_path() / "tfwd_seed_test.txt").string();
  io::write_density_file(path, gaussian_density(RadialGrid::for_charge(3.0, 500), 1.0, 4.0), "gaussian");
  MinimizeOptions cus;
  cus.seed_profile = solver::SeedProfile::custom;
  cus.seed_path = path;
  const auto d = solver::minimize(p, 3.0, cus);
  CHECK(rel_err(d.breakdown.total, a.breakdown.total) < 1e-6);
  std::remove(path.c_str());
}

TEST_CASE("option validation and non-convergence", "[solver]") {
  const ModelParams p{1.0, kPhysicalC, kDefaultLambda};
  MinimizeOptions bad;
  bad.max_iters = 0;
  CHECK_THROWS_AS(solver::minimize(p, 1.0, bad), DomainError);
  bad = {};
  bad.tol_grad = 0.0;
  CHECK_THROWS_AS(solver::minimize(p, 1.0, bad), DomainError);
  bad = {};
  bad.seed_profile = solver::SeedProfile::custom;
  CHECK_THROWS_AS(solver::minimize(p, 1.0, bad), DomainError);
  CHECK_THROWS_AS(solver::minimize(p, 0.0), DomainError);
  CHECK_THROWS_AS(solver::parse_seed_profile("gaussian"), DomainError);
  CHECK_THROWS_AS(solver::parse_mass_mode("exact"), DomainError);

  MinimizeOptions few;
  few.max_iters = 3;
  const auto r = solver::minimize(p, 1.0, few);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.breakdown.total <= r.seed_energy);
}

TEST_CASE("energy curve in at_most mode", "[solver][curve]") {
  const auto p = ModelParams::from_kappa(1.0, 1.0);
  MinimizeOptions o;
  o.mass_mode = MassMode::at_most;
  CHECK(solver::energy_curve(p, {}, o).empty());
  CHECK_THROWS_AS(solver::energy_curve(p, {1.0, 0.5}, o), DomainError);
  const auto curve = solver::energy_curve(p, {0.6, 0.8, 1.0, 1.2, 1.4, 1.6}, o);
  REQUIRE(curve.size() == 6);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    REQUIRE(curve[i].result.has_value());
    CHECK(curve[i].result->achieved_mass <= curve[i].N + solver::kMassTolerance);
    if (i > 0) CHECK(curve[i].result->breakdown.total <= curve[i - 1].result->breakdown.total + 1e-8);
  }
  // strictly decreasing below saturation, flat above
  CHECK(curve[1].result->breakdown.total < curve[0].result->breakdown.total - 1e-4);
  CHECK(std::abs(curve[5].result->breakdown.total - curve[4].result->breakdown.total) < 1e-8);
  CHECK(curve[5].result->achieved_mass < 1.4);
}

TEST_CASE("excess charge scan", "[solver][excess]") {
  const auto p = ModelParams::from_kappa(1.0, 1.0);
  const auto est = solver::excess_charge_estimate(p, {}, 1e-6);
  CHECK(est.step == 0.05);
  CHECK(est.N_c >= p.Z);
  CHECK(est.N_c <= est.rhs.rhs);
  CHECK(est.minimizer_mass <= est.N_c + solver::kMassTolerance);
  for (const auto& pt : est.curve) {
    REQUIRE(pt.result.has_value());
    CHECK(pt.result->achieved_mass <= bounds::excess_rhs(pt.result->density, p).rhs);
  }
  // halving the flatness threshold moves N_c by less than one step
  const auto half = solver::excess_charge_estimate(p, {}, 5e-7);
  CHECK(std::abs(half.N_c - est.N_c) < est.step + 1e-12);
  CHECK_THROWS_AS(solver::excess_charge_estimate(p, {}, 0.0), DomainError);
}

TEST_CASE("neutral energies scale like Z^{7/3} at fixed kappa", "[solver][scaling]") {
  double lo = 1e300, hi = -1e300;
  for (double Z : {1.0, 2.0, 5.0}) {
    const auto p = ModelParams::from_kappa(Z, 0.5);
    const auto r = solver::minimize(p, Z);
    CHECK(r.converged);
    const double b = bounds::lower_bound(p, Z).bound_value;
    CHECK(r.breakdown.total >= b);
    const double scaled = r.breakdown.total / std::pow(Z, 7.0 / 3.0);
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  CHECK(hi < 0.0);
  CHECK(lo / hi < 2.0);
}
