// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <tfwd/bounds.hpp>
#include <tfwd/certify.hpp>
#include <tfwd/cli.hpp>
#include <tfwd/random_density.hpp>
#include <tfwd/solver.hpp>
#include <tfwd/tf_atom.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

using namespace tfwd;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

Verdict extremal_constants() {
  Verdict v;
  const auto mu = specfun::compute_mu();
  const auto xi = specfun::compute_xi(3.0);
  const auto trig = specfun::compute_trig_max();
  v.require(std::abs(mu.value - 1.66) <= 0.01, "mu = " + fmt("%.6f", mu.value));
  v.require(mu.argmax && std::abs(*mu.argmax - 1.45) <= 0.05, "argmax of mu");
  v.require(std::abs(xi.xi0.value - 1.15) <= 0.01, "xi0 = " + fmt("%.6f", xi.xi0.value));
  v.require(std::abs(xi.xi - 0.0914) <= 0.001, "xi = " + fmt("%.6f", xi.xi));
  v.require(std::abs(trig.value - (2.0 + std::sqrt(2.0)) / 4.0) <= 1e-9, "trig max");
  v.note(fmt("mu = %.6f at t = %.4f", mu.value, mu.argmax.value_or(0.0)) + fmt(", xi0 = %.6f, xi = %.6f", xi.xi0.value, xi.xi) +
         fmt(", trig max error %.2e", std::abs(trig.value - (2.0 + std::sqrt(2.0)) / 4.0)));
  return v;
}

Verdict limit_values() {
  Verdict v;
  const double a = std::abs(specfun::ttf_over_t5(1e-4) - 0.8), b = std::abs(specfun::ttf_over_t4(1e4) - 2.0);
  v.require(a <= 1e-6, "T/t^5 at 1e-4");
  v.require(b <= 1e-3, "T/t^4 at 1e4");
  v.note(fmt("|T/t^5 - 4/5| = %.2e, |T/t^4 - 2| = %.2e", a, b));
  return v;
}

Verdict s0_solver() {
  Verdict v;
  double worst = 0.0, prev = -1e300;
  bool increasing = true;
  const std::size_t n = 1000;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = specfun::log_grid_point(i, n, 1e-3, 1e2);
    const auto sol = bounds::solve_s0_detailed(k);
    worst = std::max(worst, std::abs(bounds::s0_residual(sol.y, k)));
    increasing = increasing && sol.log_s0 > prev;
    prev = sol.log_s0;
  }
  const double coef = bounds::lower_bound(ModelParams::from_kappa(1.0, 1e-3), 1.0).coefficient;
  v.require(worst <= 1e-12, "residual");
  v.require(increasing, "monotone");
  v.require(std::abs(coef - 1.0) <= 1e-3, "coefficient at kappa = 1e-3");
  v.note(fmt("max residual %.2e over 1000 kappa, coefficient(1e-3) - 1 = %.2e", worst, coef - 1.0));
  return v;
}

Verdict tf_oracle() {
  Verdict v;
  const double shoot = tf::shoot().energy;
  const double direct = -tf::minimize(1.0).energy;
  v.require(rel_err(direct, shoot) <= 1e-3, "methods disagree");
  double worst = 0.0;
  for (double Z : {2.0, 4.0}) worst = std::max(worst, rel_err(-tf::minimize(Z).energy, direct * std::pow(Z, 7.0 / 3.0)));
  v.require(worst <= 1e-3, "Z^{7/3} scaling");
  v.note(fmt("e_TF shooting %.10f, direct %.10f", shoot, direct) + fmt(", scaling error %.2e", worst));
  return v;
}

Verdict theorem1() {
  Verdict v;
  Rng rng(20240501);
  const double kappas[] = {0.1, 1.0, 5.0};
  int violations = 0;
  double worst = 1e300;
  for (int i = 0; i < 50; ++i) {
    const double Z = rng.log_uniform(1.0, 50.0);
    const auto p = ModelParams::from_kappa(Z, kappas[i % 3]);
    const auto rho = random_density(rng, Z, RadialGrid::for_charge(Z));
    const double E = total_energy(rho, p).total;
    const double b = bounds::lower_bound(p, mass(rho)).bound_value;
    if (!(E >= b)) ++violations;
    worst = std::min(worst, (E - b) / std::abs(b));
  }
  v.require(violations == 0, std::to_string(violations) + " violations");
  v.note(fmt("50 densities, smallest relative margin %.4f", worst));
  return v;
}

Verdict certificates() {
  Verdict v;
  const auto suite = certify::run_all();
  int passed = 0;
  for (const auto& r : suite.reports) {
    if (r.passed) ++passed;
    else v.require(false, r.name + fmt(" margin %.3e", r.worst_margin));
    if (r.name == "angular_identity") {
      v.require(r.worst_margin >= -1e-8, "angular deviation");
      v.note(fmt("angular deviation %.2e", -r.worst_margin));
    }
    if (r.name == "hardy_weizsacker" || r.name == "tfl_split") {
      v.require(r.worst_margin >= 0.0, r.name + " negative margin");
      v.note(r.name + fmt(" margin %.3e", r.worst_margin));
    }
  }
  v.note(std::to_string(passed) + "/" + std::to_string(suite.reports.size()) + " passed");
  return v;
}

Verdict nonrel_limit() {
  Verdict v;
  const auto rho = hydrogenic_density(RadialGrid::for_charge(1.0), 1.0, 1.0);
  double prev = 0.0;
  std::string ratios;
  for (double c : {100.0, 200.0, 400.0}) {
    const ModelParams p{1.0, c, kDefaultLambda};
    const double d = std::abs(total_energy(rho, p).total - nonrel_energy(rho, p));
    if (prev > 0.0) {
      v.require(prev / d >= 3.0, fmt("ratio %.3f at c = %.0f", prev / d, c));
      ratios += (ratios.empty() ? "" : ", ") + fmt("%.3f", prev / d);
    }
    prev = d;
  }
  v.note("reduction factors per doubling: " + ratios);
  return v;
}

Verdict excess_experiment() {
  Verdict v;
  Rng rng(99);
  double worst_grad = 0.0;
  for (double Z : {1.0, 2.0, 5.0, 10.0}) {
    const auto p = ModelParams::from_kappa(Z, 1.0);
    const solver::MinimizeOptions opts;
    int converged = 0;
    auto check = [&](const solver::MinimizeResult& r) {
      if (!r.converged) return;
      ++converged;
      const double rhs = bounds::excess_rhs(r.density, p).rhs;
      v.require(r.achieved_mass <= rhs, fmt("Z = %g: mass %.6f above rhs", Z, r.achieved_mass));
    };
    const auto neutral = solver::minimize(p, Z, opts);
    check(neutral);
    // gradient check at the neutral minimizer (mass constraint active), the
    // seed and a random density; saturated minimizers have g ~ 0
    const solver::DiscreteFunctional fn(p, neutral.density.grid());
    for (const auto& rho : {neutral.density, solver::seed_density(p, Z, opts, fn.grid()), random_density(rng, Z, fn.grid())})
      worst_grad = std::max(worst_grad, solver::gradient_check(fn, rho, rng));
    try {
      const auto est = solver::excess_charge_estimate(p, opts, 1e-6);
      for (const auto& pt : est.curve)
        if (pt.result) check(*pt.result);
      v.note(fmt("Z = %g: N_c = %.3f", Z, est.N_c) + fmt(", rhs %.2f", est.rhs.rhs) + ", " + std::to_string(converged) +
             " converged minimizers");
    } catch (const std::exception& e) {
      v.require(false, fmt("Z = %g: ", Z) + e.what());
    }
    v.require(converged > 0, fmt("Z = %g: no converged minimizer", Z));
  }
  v.require(worst_grad <= 1e-6, fmt("gradient check %.2e", worst_grad));
  v.note(fmt("worst gradient mismatch %.2e", worst_grad));
  return v;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict reproducibility() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / "tfwd_acceptance";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "Z = 10\nkappa = 1\nN = 10\nseed = 3\n";
  for (const char* cmd : {"certify", "bound"}) {
    std::string outputs[2];
    for (int k = 0; k < 2; ++k) {
      const auto out = dir / (std::string(cmd) + std::to_string(k) + ".json");
      std::filesystem::remove(out);
      const std::string line = std::string(TFWD_CLI_PATH) + " " + cmd + " --config " + cfg.string() + " --out " + out.string();
      const int status = std::system(line.c_str());
      v.require(status == 0, std::string(cmd) + " exit status");
      outputs[k] = read_file(out);
    }
    v.require(!outputs[0].empty() && outputs[0] == outputs[1], std::string(cmd) + " reports differ");
    v.note(std::string(cmd) + ": " + std::to_string(outputs[0].size()) + " identical bytes");
  }
  return v;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {1, "extremal constants", extremal_constants},
      {2, "limit values", limit_values},
      {3, "s0 solver", s0_solver},
      {4, "Thomas-Fermi energy oracle", tf_oracle},
      {5, "lower bound on random densities", theorem1},
      {6, "certificate suite", certificates},
      {7, "non-relativistic limit", nonrel_limit},
      {8, "excess-charge experiment", excess_experiment},
      {9, "reproducible reports", reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failures;
    std::printf("%s criterion %d: %s (%s) [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
