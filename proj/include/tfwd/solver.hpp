#pragma once

// Minimization of the discrete TFWD functional over radial densities.
//
// Unknowns are the nodal values u_i = F(p_i/c) >= 0. In u the Weizsaecker
// term is the Dirichlet form K sum_i e_i (u_{i+1} - u_i)^2, the local terms
// depend on u through t = F^{-1}(u), and
//
//   d rho / du = c^3 t^2 / (pi^2 f(t)).
//
// Search directions come from limited-memory BFGS whose initial inverse
// Hessian is a tridiagonal preconditioner P = 2K L + diag(delta), L the edge
// Laplacian and delta a proxy for the curvature of the Coulomb terms. The
// mass constraint is handled by projecting the direction P-orthogonally onto
// the tangent space of {mass = N} and retracting each trial point by clipping
// u >= 0 and rescaling rho.

#include <tfwd/bounds.hpp>
#include <tfwd/density_io.hpp>
#include <tfwd/errors.hpp>
#include <tfwd/model.hpp>
#include <tfwd/random_density.hpp>
#include <tfwd/specfun.hpp>
#include <tfwd/tf_atom.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tfwd::solver {

enum class SeedProfile { hydrogenic, thomas_fermi, custom };
enum class MassMode { equality, at_most };

inline std::string to_string(SeedProfile s) {
  switch (s) {
    case SeedProfile::hydrogenic: return "hydrogenic";
    case SeedProfile::thomas_fermi: return "thomas_fermi";
    case SeedProfile::custom: return "custom";
  }
  return "?";
}

inline std::string to_string(MassMode m) { return m == MassMode::equality ? "equality" : "at_most"; }

inline SeedProfile parse_seed_profile(const std::string& s) {
  if (s == "hydrogenic") return SeedProfile::hydrogenic;
  if (s == "thomas_fermi") return SeedProfile::thomas_fermi;
  if (s == "custom") return SeedProfile::custom;
  throw DomainError("unknown seed profile '" + s + "' (expected hydrogenic, thomas_fermi or custom)");
}

inline MassMode parse_mass_mode(const std::string& s) {
  if (s == "equality") return MassMode::equality;
  if (s == "at_most") return MassMode::at_most;
  throw DomainError("unknown mass mode '" + s + "' (expected equality or at_most)");
}

struct MinimizeOptions {
  int max_iters = 5000;
  double step_init = 1.0;
  double tol_energy = 1e-9;
  double tol_grad = 1e-6;
  SeedProfile seed_profile = SeedProfile::hydrogenic;
  std::string seed_path;  // for SeedProfile::custom
  MassMode mass_mode = MassMode::equality;
  std::size_t grid_size = RadialGrid::kDefaultSize;
  double r_max = RadialGrid::kDefaultRmax;
  int memory = 8;              // L-BFGS pairs
  int stall_window = 10;       // consecutive small energy changes required

  void validate() const {
    if (max_iters < 1) throw DomainError("max_iters must be >= 1");
    if (!(step_init > 0.0)) throw DomainError("step_init must be positive");
    if (!(tol_energy > 0.0) || !(tol_grad > 0.0)) throw DomainError("tolerances must be positive");
    if (grid_size < 16) throw DomainError("grid_size must be >= 16");
    if (!(r_max > 0.0)) throw DomainError("r_max must be positive");
    if (seed_profile == SeedProfile::custom && seed_path.empty()) throw DomainError("custom seed profile needs a density file");
    if (memory < 0 || stall_window < 1) throw DomainError("memory must be >= 0 and stall_window >= 1");
  }
};

inline constexpr double kMassTolerance = 1e-8;

struct MinimizeResult {
  RadialDensity density;
  EnergyBreakdown breakdown;
  double target_mass = 0.0;
  double achieved_mass = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  double seed_energy = 0.0;
  double max_mass_violation = 0.0;  // over all accepted iterates
  std::vector<double> energy_history;
  std::string stop_reason;
};

// ---------------------------------------------------------------------------

/// Discrete energy in the variable u and its exact gradient.
class DiscreteFunctional {
public:
  DiscreteFunctional(const ModelParams& params, RadialGrid grid)
      : p_(params), g_(std::move(grid)), vol_(g_.size()), K_(weizsacker_prefactor(params)) {
    p_.validate();
    detail::require_gradient_nodes(g_);
    for (std::size_t i = 0; i < g_.size(); ++i) vol_[i] = 4.0 * kPi * g_.weight(i) * g_.r(i) * g_.r(i);
    build_preconditioner();
  }

  const RadialGrid& grid() const { return g_; }
  const ModelParams& params() const { return p_; }
  std::size_t size() const { return g_.size(); }

  double rho_of_t(double t) const { return density_from_momentum(p_.c * t); }

  /// Energy; fills the gradient and the mass gradient n_i = vol_i d rho_i/du_i when given.
  double evaluate(std::span<const double> u, std::vector<double>* grad = nullptr, std::vector<double>* mass_grad = nullptr) const {
    const std::size_t m = size();
    const double c = p_.c, c2 = c * c, c4 = c2 * c2, c5 = c4 * c;
    const double tf_pre = c5 / (8.0 * kPi * kPi), x_pre = c4 / (8.0 * kPi * kPi * kPi);
    std::vector<double> t(m), shells(m);
    for (std::size_t i = 0; i < m; ++i) {
      t[i] = specfun::F_inverse(u[i]);
      shells[i] = vol_[i] * rho_of_t(t[i]);
    }
    const auto phi = shell_potential(g_, shells);
    double e = K_ * detail::dirichlet_form(g_, u);
    for (std::size_t i = 0; i < m; ++i) {
      const double local = tf_pre * specfun::ttf(t[i]) - x_pre * specfun::exchange_x(t[i]);
      e += vol_[i] * local + shells[i] * (0.5 * phi[i] - p_.Z / g_.r(i));
    }
    if (grad || mass_grad) {
      if (grad) grad->assign(m, 0.0);
      if (mass_grad) mass_grad->assign(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        const double ti = t[i];
        const double drho_du = ti > 0.0 ? c * c2 * ti * ti / (kPi * kPi * specfun::f_value(ti)) : 0.0;
        if (mass_grad) (*mass_grad)[i] = vol_[i] * drho_du;
        if (grad) {
          const double sq = std::sqrt(1.0 + ti * ti);
          const double dtf = c2 * ti * ti / (sq + 1.0);  // c^2 (sqrt(1+t^2) - 1)
          const double dx = c / (8.0 * kPi) * specfun::exchange_x_prime_over_t2(ti);
          (*grad)[i] = vol_[i] * drho_du * (dtf - dx - p_.Z / g_.r(i) + phi[i]);
        }
      }
      if (grad) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
          const double w = 2.0 * K_ * g_.edge(i) * (u[i + 1] - u[i]);
          (*grad)[i] -= w;
          (*grad)[i + 1] += w;
        }
      }
    }
    return e;
  }

  double mass(std::span<const double> u) const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += vol_[i] * rho_of_t(specfun::F_inverse(u[i]));
    return s;
  }

  std::vector<double> u_from_density(const RadialDensity& rho) const {
    if (rho.size() != size()) throw GridError("density and functional grids differ in size");
    std::vector<double> u(size());
    for (std::size_t i = 0; i < size(); ++i) u[i] = specfun::F(fermi_momentum(rho[i]) / p_.c);
    return u;
  }

  RadialDensity density(std::span<const double> u) const {
    std::vector<double> rho(size());
    for (std::size_t i = 0; i < size(); ++i) rho[i] = rho_of_t(specfun::F_inverse(u[i]));
    return RadialDensity(g_, std::move(rho));
  }

  /// u for the density rho(u) scaled by `factor`.
  void scale_mass(std::vector<double>& u, double factor) const {
    const double k = std::cbrt(factor);
    for (auto& v : u) v = specfun::F(specfun::F_inverse(v) * k);
  }

  /// x = P^{-1} b (Thomas algorithm; P is symmetric positive definite).
  std::vector<double> apply_inverse_preconditioner(std::span<const double> b) const {
    const std::size_t m = size();
    std::vector<double> cp(m), x(m);
    double denom = diag_[0];
    cp[0] = off_[0] / denom;
    x[0] = b[0] / denom;
    for (std::size_t i = 1; i < m; ++i) {
      const double lower = off_[i - 1];
      denom = diag_[i] - lower * cp[i - 1];
      if (i + 1 < m) cp[i] = off_[i] / denom;
      x[i] = (b[i] - lower * x[i - 1]) / denom;
    }
    for (std::size_t i = m - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
    return x;
  }

private:
  void build_preconditioner() {
    const std::size_t m = size();
    diag_.assign(m, 0.0);
    off_.assign(m, 0.0);
    // rho ~ u^2 / alpha^2 at low density
    const double alpha2 = 4.0 * kPi * kPi / (3.0 * p_.c * p_.c * p_.c);
    for (std::size_t i = 0; i < m; ++i) diag_[i] = 2.0 * vol_[i] * (p_.Z / g_.r(i) + p_.Z * p_.Z) / alpha2;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double w = 2.0 * K_ * g_.edge(i);
      diag_[i] += w;
      diag_[i + 1] += w;
      off_[i] = -w;
    }
  }

  ModelParams p_;
  RadialGrid g_;
  std::vector<double> vol_;
  double K_;
  std::vector<double> diag_, off_;
};

/// Largest relative mismatch between the analytic directional derivative at
/// `rho` and a central difference with step h, over random directions
/// v_i = u_i * U(0, 1). Nonnegative directions avoid cancellation in g.v at
/// constrained minimizers, where g is parallel to the mass gradient. At
/// unconstrained stationary points g.v vanishes and the ratio is meaningless.
inline double gradient_check(const DiscreteFunctional& fn, const RadialDensity& rho, Rng& rng, int directions = 5, double h = 1e-5) {
  const auto u = fn.u_from_density(rho);
  std::vector<double> g;
  fn.evaluate(u, &g);
  double worst = 0.0;
  std::vector<double> v(u.size()), up(u.size()), um(u.size());
  for (int k = 0; k < directions; ++k) {
    double an = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      v[i] = u[i] * rng.uniform(0.0, 1.0);
      up[i] = u[i] + h * v[i];
      um[i] = u[i] - h * v[i];
      an += g[i] * v[i];
    }
    const double fd = (fn.evaluate(up) - fn.evaluate(um)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - an) / std::abs(an));
  }
  return worst;
}

// ---------------------------------------------------------------------------

inline RadialGrid solver_grid(const ModelParams& params, const MinimizeOptions& opts) {
  return RadialGrid::for_charge(params.Z, opts.grid_size, opts.r_max);
}

/// Seed density of mass N on the solver grid.
inline RadialDensity seed_density(const ModelParams& params, double N, const MinimizeOptions& opts, const RadialGrid& grid) {
  RadialDensity rho = [&] {
    switch (opts.seed_profile) {
      case SeedProfile::hydrogenic: return hydrogenic_density(grid, N, params.Z);
      case SeedProfile::thomas_fermi: {
        tf::MinimizationOptions o;
        o.grid_size = 2000;
        o.tol = 1e-8;
        const auto sol = tf::minimize(params.Z, o);
        const double scale = 1.0 / std::cbrt(params.Z);
        const auto src = RadialGrid::logarithmic(o.r_min * scale, o.r_max * scale, o.grid_size);
        return resample(src.nodes(), sol.rho, grid);
      }
      case SeedProfile::custom: {
        const auto table = io::read_density_file(opts.seed_path);
        return resample(table.r, table.rho, grid);
      }
    }
    throw DomainError("unknown seed profile");
  }();
  const double m = mass(rho);
  if (!(m > 0.0)) throw DomainError("seed density has zero mass on the solver grid");
  return rho.scaled(N / m);
}

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

} // namespace detail

/// Minimize from an explicit starting density (warm start).
inline MinimizeResult minimize_from(const ModelParams& params, double N, const MinimizeOptions& opts, const RadialDensity& start) {
  params.validate();
  opts.validate();
  if (!(N > 0.0) || !std::isfinite(N)) throw DomainError("minimize: N must be positive and finite");
  const DiscreteFunctional fn(params, start.grid());
  const std::size_t m = fn.size();
  const bool equality = opts.mass_mode == MassMode::equality;

  auto retract = [&](std::vector<double>& u) {
    for (auto& v : u) v = std::max(v, 0.0);
    const double mm = fn.mass(u);
    if (mm > 0.0 && (equality || mm > N)) fn.scale_mass(u, N / mm);
  };

  std::vector<double> u = fn.u_from_density(start);
  {
    const double m0 = fn.mass(u);
    if (!(m0 > 0.0)) throw DomainError("minimize: starting density has zero mass");
    if (equality || m0 > N) fn.scale_mass(u, N / m0);
  }

  MinimizeResult res{.density = fn.density(u), .breakdown = {}, .target_mass = N, .energy_history = {}, .stop_reason = {}};
  std::vector<double> g, n;
  double e = fn.evaluate(u, &g, &n);
  res.seed_energy = e;
  res.energy_history.push_back(e);

  std::deque<detail::Pair> pairs;
  std::vector<double> gl_prev, u_prev;
  int small_changes = 0;

  // Lagrangian gradient: g minus its P-orthogonal component along n when the
  // mass constraint is active; clipped coordinates with outward gradient are frozen.
  auto lagrangian = [&](const std::vector<double>& grad, const std::vector<double>& ng, double mass_now, bool& active) {
    std::vector<double> gl = grad;
    for (std::size_t i = 0; i < m; ++i)
      if (u[i] <= 0.0 && gl[i] > 0.0) gl[i] = 0.0;
    const auto pn = fn.apply_inverse_preconditioner(ng);
    const auto pg = fn.apply_inverse_preconditioner(gl);
    const double npn = detail::dot(ng, pn);
    const double npg = detail::dot(ng, pg);
    active = equality || (mass_now >= N * (1.0 - 1e-12) && npg < 0.0);
    if (active && npn > 0.0) {
      const double nu = npg / npn;
      for (std::size_t i = 0; i < m; ++i) gl[i] -= nu * ng[i];
    }
    return gl;
  };

  auto grad_norm_of = [&](const std::vector<double>& gl) {
    const auto pg = fn.apply_inverse_preconditioner(gl);
    return std::sqrt(std::max(0.0, detail::dot(gl, pg)) / std::max(std::abs(e), 1.0));
  };

  bool active = false;
  double mass_now = fn.mass(u);
  std::vector<double> gl = lagrangian(g, n, mass_now, active);
  res.grad_norm = grad_norm_of(gl);

  for (res.iterations = 0; res.iterations < opts.max_iters;) {
    if (small_changes >= opts.stall_window && res.grad_norm < opts.tol_grad) {
      res.converged = true;
      res.stop_reason = "tolerances met";
      break;
    }
    // two-loop recursion with H0 = P^{-1}
    std::vector<double> q = gl;
    std::vector<double> alpha(pairs.size());
    for (std::size_t k = pairs.size(); k-- > 0;) {
      alpha[k] = pairs[k].rho * detail::dot(pairs[k].s, q);
      for (std::size_t i = 0; i < m; ++i) q[i] -= alpha[k] * pairs[k].y[i];
    }
    std::vector<double> d = fn.apply_inverse_preconditioner(q);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double beta = pairs[k].rho * detail::dot(pairs[k].y, d);
      for (std::size_t i = 0; i < m; ++i) d[i] += (alpha[k] - beta) * pairs[k].s[i];
    }
    for (auto& v : d) v = -v;
    // stay in the tangent space of the active constraint
    auto project = [&](std::vector<double>& dir) {
      for (std::size_t i = 0; i < m; ++i)
        if (u[i] <= 0.0 && dir[i] < 0.0) dir[i] = 0.0;
      if (active) {
        const auto pn = fn.apply_inverse_preconditioner(n);
        const double npn = detail::dot(n, pn);
        if (npn > 0.0) {
          const double k = detail::dot(n, dir) / npn;
          for (std::size_t i = 0; i < m; ++i) dir[i] -= k * pn[i];
        }
      }
    };
    project(d);
    double slope = detail::dot(gl, d);
    if (!(slope < 0.0)) {
      pairs.clear();
      d = fn.apply_inverse_preconditioner(gl);
      for (auto& v : d) v = -v;
      project(d);
      slope = detail::dot(gl, d);
    }
    if (!(slope < 0.0)) {
      res.stop_reason = "no descent direction";
      break;
    }

    // backtracking (Armijo) on the retracted path
    double step = pairs.empty() ? opts.step_init : 1.0;
    if (pairs.empty()) {
      // first step of a memory cycle: limit the relative change of u
      double umax = 0.0, dmax = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        umax = std::max(umax, u[i]);
        dmax = std::max(dmax, std::abs(d[i]));
      }
      if (dmax > 0.0) step = std::min(step, 0.5 * umax / dmax);
    }
    std::vector<double> trial(m), g_new, n_new;
    double e_new = e;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = u[i] + step * d[i];
      retract(trial);
      e_new = fn.evaluate(trial, &g_new, &n_new);
      if (!std::isfinite(e_new)) {
        std::ostringstream msg;
        msg << "minimize: non-finite energy in line search at iteration " << res.iterations << " (step " << step
            << ", E = " << e << ", grad_norm = " << res.grad_norm << ")";
        throw SolverError(msg.str());
      }
      if (e_new <= e + 1e-4 * step * slope && e_new < e) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!pairs.empty()) {
        pairs.clear();
        continue;
      }
      res.stop_reason = "line search exhausted";
      // at roundoff level the energy cannot decrease further
      res.converged = res.grad_norm < opts.tol_grad;
      break;
    }

    ++res.iterations;
    u_prev = u;
    gl_prev = gl;
    u = trial;
    g.swap(g_new);
    n.swap(n_new);
    const double change = std::abs(e - e_new) / std::max(std::abs(e_new), 1e-300);
    e = e_new;
    res.energy_history.push_back(e);
    small_changes = change < opts.tol_energy ? small_changes + 1 : 0;
    mass_now = fn.mass(u);
    const double violation = equality ? std::abs(mass_now - N) : std::max(0.0, mass_now - N);
    res.max_mass_violation = std::max(res.max_mass_violation, violation);

    gl = lagrangian(g, n, mass_now, active);
    res.grad_norm = grad_norm_of(gl);

    if (opts.memory > 0) {
      detail::Pair pr;
      pr.s.resize(m);
      pr.y.resize(m);
      for (std::size_t i = 0; i < m; ++i) {
        pr.s[i] = u[i] - u_prev[i];
        pr.y[i] = gl[i] - gl_prev[i];
      }
      const double sy = detail::dot(pr.s, pr.y);
      if (sy > 1e-12 * std::sqrt(detail::dot(pr.s, pr.s) * detail::dot(pr.y, pr.y)) && sy > 0.0) {
        pr.rho = 1.0 / sy;
        pairs.push_back(std::move(pr));
        if (static_cast<int>(pairs.size()) > opts.memory) pairs.pop_front();
      }
    }
  }
  if (res.stop_reason.empty()) {
    if (small_changes >= opts.stall_window && res.grad_norm < opts.tol_grad) {
      res.converged = true;
      res.stop_reason = "tolerances met";
    } else {
      res.stop_reason = "iteration limit";
    }
  }

  res.density = fn.density(u);
  res.achieved_mass = mass(res.density);
  res.breakdown = total_energy(res.density, params);
  return res;
}

/// Minimize E over densities of mass N (or at most N) starting from the seed profile.
inline MinimizeResult minimize(const ModelParams& params, double N, const MinimizeOptions& opts = {}) {
  params.validate();
  opts.validate();
  if (!(N > 0.0) || !std::isfinite(N)) throw DomainError("minimize: N must be positive and finite");
  const auto grid = solver_grid(params, opts);
  return minimize_from(params, N, opts, seed_density(params, N, opts, grid));
}

// ---------------------------------------------------------------------------

struct CurvePoint {
  double N = 0.0;
  std::optional<MinimizeResult> result;
  std::string error;  // non-empty when the point failed
};

/// Minima along ascending N, each warm-started from the previous minimizer.
inline std::vector<CurvePoint> energy_curve(const ModelParams& params, const std::vector<double>& N_values, const MinimizeOptions& opts = {}) {
  params.validate();
  opts.validate();
  for (std::size_t i = 1; i < N_values.size(); ++i)
    if (!(N_values[i] > N_values[i - 1])) throw DomainError("energy_curve: N values must be strictly ascending");
  std::vector<CurvePoint> out;
  const auto grid = solver_grid(params, opts);
  std::optional<RadialDensity> warm;
  for (double N : N_values) {
    CurvePoint pt;
    pt.N = N;
    try {
      auto start = warm ? *warm : seed_density(params, N, opts, grid);
      if (warm && opts.mass_mode == MassMode::equality) start = start.scaled(N / mass(start));
      if (warm && opts.mass_mode == MassMode::at_most) {
        // the previous minimizer is feasible; also try the fresh seed and keep the lower energy
        auto fresh = minimize_from(params, N, opts, seed_density(params, N, opts, grid));
        auto cont = minimize_from(params, N, opts, start);
        pt.result = cont.breakdown.total <= fresh.breakdown.total ? std::move(cont) : std::move(fresh);
      } else {
        pt.result = minimize_from(params, N, opts, start);
      }
      warm = pt.result->density;
    } catch (const std::exception& ex) {
      pt.error = ex.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

struct ExcessEstimate {
  double N_c = 0.0;
  double step = 0.0;
  double flat_tol = 0.0;
  std::vector<CurvePoint> curve;
  bounds::ExcessRhs rhs;      // at the minimizer for N_c
  double minimizer_mass = 0.0;
};

inline double excess_scan_step(double Z) { return std::max(0.05, 0.01 * Z); }

/// Smallest N on the scan N = Z, Z + delta, ... with E(N + delta) - E(N) > -flat_tol,
/// computed in at_most mode.
inline ExcessEstimate excess_charge_estimate(const ModelParams& params, const MinimizeOptions& opts, double flat_tol,
                                             double N_limit_factor = 4.0) {
  params.validate();
  if (!(flat_tol > 0.0)) throw DomainError("excess_charge_estimate: flat_tol must be positive");
  MinimizeOptions o = opts;
  o.mass_mode = MassMode::at_most;
  ExcessEstimate est;
  est.step = excess_scan_step(params.Z);
  est.flat_tol = flat_tol;
  const double N_max = N_limit_factor * params.Z + 10.0;
  const auto grid = solver_grid(params, o);
  std::optional<RadialDensity> warm;
  auto solve = [&](double N) {
    CurvePoint pt;
    pt.N = N;
    auto fresh = minimize_from(params, N, o, seed_density(params, N, o, grid));
    if (warm) {
      auto cont = minimize_from(params, N, o, *warm);
      pt.result = cont.breakdown.total <= fresh.breakdown.total ? std::move(cont) : std::move(fresh);
    } else {
      pt.result = std::move(fresh);
    }
    warm = pt.result->density;
    return pt;
  };
  est.curve.push_back(solve(params.Z));
  for (int k = 1;; ++k) {
    const double N = params.Z + k * est.step;
    if (N > N_max) throw ConvergenceError("excess_charge_estimate: no flattening up to N = " + std::to_string(N_max));
    est.curve.push_back(solve(N));
    const auto& prev = est.curve[est.curve.size() - 2];
    const auto& cur = est.curve.back();
    if (cur.result->breakdown.total - prev.result->breakdown.total > -flat_tol) {
      est.N_c = prev.N;
      est.minimizer_mass = prev.result->achieved_mass;
      est.rhs = bounds::excess_rhs(prev.result->density, params);
      return est;
    }
  }
}

} // namespace tfwd::solver
