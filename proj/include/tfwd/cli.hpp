#pragma once

// Run configuration, config-file parsing and report assembly for the tfwd
// command-line tool. Everything here is deterministic: identical
// configurations give byte-identical reports unless timing is requested.

#include <tfwd/bounds.hpp>
#include <tfwd/certify.hpp>
#include <tfwd/density_io.hpp>
#include <tfwd/errors.hpp>
#include <tfwd/model.hpp>
#include <tfwd/solver.hpp>
#include <tfwd/tf_atom.hpp>

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef TFWD_VERSION_STRING
#define TFWD_VERSION_STRING "0.3.0"
#endif

namespace tfwd::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = TFWD_VERSION_STRING;

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitConvergence = 2, kExitCertificate = 3 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"evaluate", "bound", "minimize", "excess", "certify", "tfhydrogen"};
  return names;
}

inline std::string default_density_path() {
#ifdef TFWD_DATA_DIR
  return std::string(TFWD_DATA_DIR) + "/hydrogen_density.txt";
#else
  return "data/hydrogen_density.txt";
#endif
}

struct RunConfig {
  std::string command;
  std::optional<double> Z, c, lambda, N, kappa;
  std::uint64_t seed = 0;
  std::size_t grid_size = RadialGrid::kDefaultSize;
  std::string density;       // evaluate input; bundled hydrogenic density when empty
  std::string out;           // report path; stdout when empty
  std::string density_out;   // minimize: where to write the minimizer
  solver::MinimizeOptions options;
  std::size_t resolution = certify::kDefaultResolution;
  std::vector<std::string> certificates;  // empty: all
  double flat_tol = 1e-6;
  double alpha = 3.0;
  bool timing = false;
};

// ---------------------------------------------------------------------------
// config files

namespace detail {

enum class Kind { number, integer, text, flag, list };

struct Key {
  const char* name;
  Kind kind;
};

inline const std::vector<Key>& keys() {
  static const std::vector<Key> k{
      {"command", Kind::text},       {"Z", Kind::number},          {"c", Kind::number},
      {"lambda", Kind::number},      {"N", Kind::number},          {"kappa", Kind::number},
      {"seed", Kind::integer},       {"grid_size", Kind::integer}, {"density", Kind::text},
      {"out", Kind::text},           {"density_out", Kind::text},  {"max_iters", Kind::integer},
      {"step_init", Kind::number},   {"tol_energy", Kind::number}, {"tol_grad", Kind::number},
      {"seed_profile", Kind::text},  {"seed_path", Kind::text},    {"mass_mode", Kind::text},
      {"memory", Kind::integer},     {"stall_window", Kind::integer}, {"resolution", Kind::integer},
      {"certificates", Kind::list},  {"flat_tol", Kind::number},   {"alpha", Kind::number},
      {"timing", Kind::flag},
  };
  return k;
}

inline const Key* find_key(const std::string& name) {
  for (const auto& k : keys())
    if (name == k.name) return &k;
  return nullptr;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& v, const std::string& where) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || v.empty()) throw ParseError(where + ": expected a number, got '" + v + "'");
  return out;
}

inline std::uint64_t parse_integer(const std::string& v, const std::string& where) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || v.empty()) throw ParseError(where + ": expected a nonnegative integer, got '" + v + "'");
  return out;
}

inline bool parse_flag(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(where + ": expected true or false, got '" + v + "'");
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline int as_int(std::uint64_t v, const std::string& where) {
  if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) throw ParseError(where + ": value too large");
  return static_cast<int>(v);
}

/// Assigns one textual value. `where` prefixes diagnostics.
inline void assign(RunConfig& cfg, const std::string& key, const std::string& v, const std::string& where) {
  auto num = [&] { return parse_number(v, where); };
  auto integer = [&] { return parse_integer(v, where); };
  auto& o = cfg.options;
  if (key == "command") cfg.command = v;
  else if (key == "Z") cfg.Z = num();
  else if (key == "c") cfg.c = num();
  else if (key == "lambda") cfg.lambda = num();
  else if (key == "N") cfg.N = num();
  else if (key == "kappa") cfg.kappa = num();
  else if (key == "seed") cfg.seed = integer();
  else if (key == "grid_size") cfg.grid_size = integer();
  else if (key == "density") cfg.density = v;
  else if (key == "out") cfg.out = v;
  else if (key == "density_out") cfg.density_out = v;
  else if (key == "max_iters") o.max_iters = as_int(integer(), where);
  else if (key == "step_init") o.step_init = num();
  else if (key == "tol_energy") o.tol_energy = num();
  else if (key == "tol_grad") o.tol_grad = num();
  else if (key == "seed_profile") {
    try {
      o.seed_profile = solver::parse_seed_profile(v);
    } catch (const DomainError& e) {
      throw ParseError(where + ": " + e.what());
    }
  } else if (key == "seed_path") o.seed_path = v;
  else if (key == "mass_mode") {
    try {
      o.mass_mode = solver::parse_mass_mode(v);
    } catch (const DomainError& e) {
      throw ParseError(where + ": " + e.what());
    }
  } else if (key == "memory") o.memory = integer();
  else if (key == "stall_window") o.stall_window = as_int(integer(), where);
  else if (key == "resolution") cfg.resolution = integer();
  else if (key == "certificates") cfg.certificates = split_list(v);
  else if (key == "flat_tol") cfg.flat_tol = num();
  else if (key == "alpha") cfg.alpha = num();
  else if (key == "timing") cfg.timing = parse_flag(v, where);
  else throw ParseError(where + ": unknown key '" + key + "'");
}

inline void parse_key_value(RunConfig& cfg, const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!find_key(key)) throw ParseError(where + ": unknown key '" + key + "'");
    assign(cfg, key, value, where + ": field '" + key + "'");
  }
}

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

inline void parse_json(RunConfig& cfg, const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ":" + line_column(text, e.byte) + ": malformed JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw ParseError(source + ": top-level JSON value must be an object");
  for (const auto& [key, value] : j.items()) {
    const std::string where = source + ": field '" + key + "'";
    const Key* k = find_key(key);
    if (!k) throw ParseError(where + ": unknown key");
    std::string text_value;
    switch (k->kind) {
      case Kind::number:
        if (!value.is_number()) throw ParseError(where + ": expected a number");
        text_value = value.dump();
        break;
      case Kind::integer:
        if (!value.is_number_unsigned()) throw ParseError(where + ": expected a nonnegative integer");
        text_value = value.dump();
        break;
      case Kind::text:
        if (!value.is_string()) throw ParseError(where + ": expected a string");
        text_value = value.get<std::string>();
        break;
      case Kind::flag:
        if (!value.is_boolean()) throw ParseError(where + ": expected true or false");
        text_value = value.get<bool>() ? "true" : "false";
        break;
      case Kind::list:
        if (value.is_string()) {
          text_value = value.get<std::string>();
        } else if (value.is_array()) {
          for (const auto& item : value) {
            if (!item.is_string()) throw ParseError(where + ": expected an array of strings");
            text_value += (text_value.empty() ? "" : ",") + item.get<std::string>();
          }
        } else {
          throw ParseError(where + ": expected a string or an array of strings");
        }
        break;
    }
    assign(cfg, key, text_value, where);
  }
}

} // namespace detail

/// Parses config text into `cfg`; JSON when the first non-blank character is '{' or '['.
inline void parse_config_text(RunConfig& cfg, const std::string& text, const std::string& source = "<config>") {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
    detail::parse_json(cfg, text, source);
  else
    detail::parse_key_value(cfg, text, source);
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  parse_config_text(cfg, ss.str(), path);
}

// ---------------------------------------------------------------------------
// validation

/// Model parameters after defaults; kappa fixes c = Z / (kappa sqrt(lambda)).
inline ModelParams resolve_params(const RunConfig& cfg) {
  const double Z = cfg.Z.value_or(1.0);
  const double lambda = cfg.lambda.value_or(kDefaultLambda);
  if (cfg.kappa) {
    if (cfg.c) throw DomainError("give either c or kappa, not both");
    if (!(*cfg.kappa > 0.0) || !std::isfinite(*cfg.kappa)) throw DomainError("kappa must be positive and finite");
    if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
    return ModelParams::from_kappa(Z, *cfg.kappa, lambda);
  }
  return {Z, cfg.c.value_or(kPhysicalC), lambda};
}

inline double resolve_N(const RunConfig& cfg, const ModelParams& p) { return cfg.N.value_or(p.Z); }

inline void require_readable(const std::string& path, const char* what) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw DomainError(std::string(what) + " '" + path + "' does not exist");
}

inline void require_writable_dir(const std::string& path, const char* what) {
  if (path.empty()) return;
  const auto parent = std::filesystem::absolute(path).parent_path();
  std::error_code ec;
  if (!std::filesystem::is_directory(parent, ec))
    throw DomainError(std::string(what) + ": directory '" + parent.string() + "' does not exist");
}

/// Checks everything that can be checked before computing.
inline void validate(const RunConfig& cfg) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), cfg.command) == names.end())
    throw DomainError(cfg.command.empty() ? "no command given" : "unknown command '" + cfg.command + "'");
  const auto p = resolve_params(cfg);
  p.validate();
  const double N = resolve_N(cfg, p);
  if (!(N >= 0.0) || !std::isfinite(N)) throw DomainError("N must be nonnegative and finite");
  if (cfg.grid_size < 3) throw DomainError("grid_size must be at least 3");
  cfg.options.validate();
  if (!(cfg.flat_tol > 0.0)) throw DomainError("flat_tol must be positive");
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 4.0)) throw DomainError("alpha must lie in [0, 4]");
  if (cfg.resolution < certify::kMinResolution)
    throw DomainError("resolution must be at least " + std::to_string(certify::kMinResolution));
  const auto known = certify::certificate_names();
  for (const auto& n : cfg.certificates)
    if (std::find(known.begin(), known.end(), n) == known.end()) throw RegistryError("unknown certificate '" + n + "'");
  if (cfg.command == "evaluate") require_readable(cfg.density.empty() ? default_density_path() : cfg.density, "density file");
  if ((cfg.command == "minimize" || cfg.command == "excess") && cfg.options.seed_profile == solver::SeedProfile::custom)
    require_readable(cfg.options.seed_path, "seed density file");
  if (cfg.command == "minimize" && !(N > 0.0)) throw DomainError("minimize needs N > 0");
  require_writable_dir(cfg.out, "report path");
  require_writable_dir(cfg.density_out, "density output path");
}

// ---------------------------------------------------------------------------
// report pieces

inline Json params_json(const ModelParams& p) {
  Json j;
  j["Z"] = p.Z;
  j["c"] = p.c;
  j["lambda"] = p.lambda;
  j["kappa"] = p.kappa();
  return j;
}

inline Json options_json(const solver::MinimizeOptions& o) {
  Json j;
  j["max_iters"] = o.max_iters;
  j["step_init"] = o.step_init;
  j["tol_energy"] = o.tol_energy;
  j["tol_grad"] = o.tol_grad;
  j["seed_profile"] = solver::to_string(o.seed_profile);
  j["seed_path"] = o.seed_path;
  j["mass_mode"] = solver::to_string(o.mass_mode);
  j["grid_size"] = o.grid_size;
  j["r_max"] = o.r_max;
  j["memory"] = o.memory;
  j["stall_window"] = o.stall_window;
  return j;
}

inline Json breakdown_json(const EnergyBreakdown& e) {
  Json j;
  j["weizsacker"] = e.weizsacker;
  j["thomas_fermi"] = e.thomas_fermi;
  j["exchange"] = e.exchange;
  j["external"] = e.external;
  j["hartree"] = e.hartree;
  j["total"] = e.total;
  j["sum_of_parts"] = e.weizsacker + e.thomas_fermi - e.exchange + e.external + e.hartree;
  j["mass"] = e.mass;
  j["diagnostics"] = {{"hardy", e.diag_hardy}, {"tg", e.diag_tg}, {"tg_threshold", e.tg_threshold}, {"l43", e.diag_l43}};
  j["tail"] = {{"mass_beyond", e.tail.mass_beyond}, {"relative", e.tail.relative}, {"warning", e.tail.warning}};
  return j;
}

inline Json bound_json(const bounds::BoundReport& b) {
  Json j;
  j["kappa"] = b.kappa;
  j["s0"] = b.s0;
  j["log_s0"] = b.log_s0;
  j["s0_residual"] = b.s0_residual;
  j["coefficient"] = b.coefficient;
  j["log_coefficient"] = b.log_coefficient;
  j["e_tf"] = b.e_tf;
  j["xi"] = b.xi;
  j["exchange_weight"] = b.exchange_weight;
  j["z_factor"] = b.z_factor;
  j["tf_part"] = b.tf_part;
  j["exchange_part"] = b.exchange_part;
  j["bound_value"] = b.bound_value;
  return j;
}

inline Json excess_rhs_json(const bounds::ExcessRhs& x) {
  Json j;
  j["s_opt"] = x.s_opt;
  j["S_opt"] = x.S_opt;
  j["c1"] = x.c1;
  j["c2"] = x.c2;
  j["weizsacker_hartree"] = x.weizsacker_hartree;
  j["remainder"] = x.remainder;
  j["rhs"] = x.rhs;
  return j;
}

inline Json minimize_json(const solver::MinimizeResult& r, const ModelParams& p) {
  Json j;
  j["converged"] = r.converged;
  j["stop_reason"] = r.stop_reason;
  j["iterations"] = r.iterations;
  j["target_mass"] = r.target_mass;
  j["achieved_mass"] = r.achieved_mass;
  j["max_mass_violation"] = r.max_mass_violation;
  j["grad_norm"] = r.grad_norm;
  j["seed_energy"] = r.seed_energy;
  j["energy"] = breakdown_json(r.breakdown);
  const auto b = bounds::lower_bound(p, r.achieved_mass);
  j["lower_bound"] = b.bound_value;
  j["above_lower_bound"] = r.breakdown.total >= b.bound_value;
  if (r.achieved_mass > 0.0) {
    const auto x = bounds::excess_rhs(r.density, p);
    j["excess_rhs"] = excess_rhs_json(x);
    j["mass_within_excess_rhs"] = r.achieved_mass <= x.rhs;
  }
  j["energy_history"] = r.energy_history;
  return j;
}

inline Json certificate_json(const certify::CertificateReport& r) {
  Json j;
  j["name"] = r.name;
  j["statement"] = r.statement;
  j["scan_description"] = r.scan_description;
  j["worst_margin"] = r.worst_margin;
  j["worst_location"] = r.worst_location;
  j["samples"] = r.samples;
  j["passed"] = r.passed;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// ---------------------------------------------------------------------------
// commands

struct Outcome {
  int exit_code = kExitOk;
  Json report;
};

namespace detail {

inline Json inputs_json(const RunConfig& cfg, const ModelParams& p) {
  Json in;
  in["params"] = params_json(p);
  const std::string& cmd = cfg.command;
  if (cmd == "bound" || cmd == "minimize") in["N"] = resolve_N(cfg, p);
  if (cmd == "evaluate") in["density"] = cfg.density.empty() ? std::string("<bundled>/hydrogen_density.txt") : cfg.density;
  if (cmd == "bound") in["alpha"] = cfg.alpha;
  if (cmd == "minimize" || cmd == "excess") {
    in["options"] = options_json(cfg.options);
    if (cmd == "minimize") in["density_out"] = cfg.density_out;
  }
  if (cmd == "excess") in["flat_tol"] = cfg.flat_tol;
  if (cmd == "certify") {
    in["resolution"] = cfg.resolution;
    in["seed"] = cfg.seed;
    in["certificates"] = cfg.certificates.empty() ? certify::certificate_names() : cfg.certificates;
  }
  return in;
}

inline Outcome run_evaluate(const RunConfig& cfg, const ModelParams& p) {
  const std::string path = cfg.density.empty() ? default_density_path() : cfg.density;
  const auto rho = io::to_density(io::read_density_file(path));
  const auto e = total_energy(rho, p);
  Outcome out;
  out.report["energy"] = breakdown_json(e);
  const auto b = bounds::lower_bound(p, e.mass);
  out.report["lower_bound"] = b.bound_value;
  out.report["above_lower_bound"] = e.total >= b.bound_value;
  return out;
}

inline Outcome run_bound(const RunConfig& cfg, const ModelParams& p) {
  const double N = resolve_N(cfg, p);
  auto b = bounds::lower_bound(p, N);
  const auto xi = cfg.alpha == 3.0 ? bounds::xi_constant() : specfun::compute_xi(cfg.alpha);
  b.xi = xi.xi;
  b.exchange_part = -b.exchange_weight * b.xi * p.c * N;
  b.bound_value = b.tf_part + b.exchange_part;
  Outcome out;
  out.report = bound_json(b);
  out.report["xi0"] = xi.xi0.value;
  out.report["xi0_argmax"] = xi.xi0.argmax ? Json(*xi.xi0.argmax) : Json(nullptr);
  // recomputed from the reported root
  const double y = std::asinh(b.s0);
  out.report["s0_residual_check"] = std::isfinite(b.s0) ? std::abs(bounds::s0_residual(y, p.kappa())) : b.s0_residual;
  return out;
}

inline Outcome run_minimize(const RunConfig& cfg, const ModelParams& p) {
  auto opts = cfg.options;
  opts.grid_size = cfg.grid_size;
  const auto r = solver::minimize(p, resolve_N(cfg, p), opts);
  Outcome out;
  out.report = minimize_json(r, p);
  if (!cfg.density_out.empty()) io::write_density_file(cfg.density_out, r.density, "tfwd minimizer");
  if (!r.converged) out.exit_code = kExitConvergence;
  return out;
}

inline Outcome run_excess(const RunConfig& cfg, const ModelParams& p) {
  auto opts = cfg.options;
  opts.grid_size = cfg.grid_size;
  const auto est = solver::excess_charge_estimate(p, opts, cfg.flat_tol);
  Outcome out;
  out.report["N_c"] = est.N_c;
  out.report["step"] = est.step;
  out.report["flat_tol"] = est.flat_tol;
  out.report["minimizer_mass"] = est.minimizer_mass;
  out.report["excess_rhs"] = excess_rhs_json(est.rhs);
  out.report["within_rhs"] = est.N_c <= est.rhs.rhs;
  Json curve = Json::array();
  bool all_converged = true;
  for (const auto& pt : est.curve) {
    Json row;
    row["N"] = pt.N;
    if (pt.result) {
      const auto& r = *pt.result;
      row["energy"] = r.breakdown.total;
      row["achieved_mass"] = r.achieved_mass;
      row["converged"] = r.converged;
      row["iterations"] = r.iterations;
      row["rhs"] = bounds::excess_rhs(r.density, p).rhs;
      all_converged = all_converged && r.converged;
    } else {
      row["error"] = pt.error;
      all_converged = false;
    }
    curve.push_back(row);
  }
  out.report["curve"] = curve;
  if (!all_converged) out.exit_code = kExitConvergence;
  return out;
}

inline Outcome run_certify(const RunConfig& cfg) {
  const auto names = cfg.certificates.empty() ? certify::certificate_names() : cfg.certificates;
  Json reports = Json::array();
  bool all = true;
  for (const auto& n : names) {
    const auto r = certify::run_certificate(n, cfg.resolution, cfg.seed);
    all = all && r.passed;
    reports.push_back(certificate_json(r));
  }
  Outcome out;
  out.report["all_passed"] = all;
  out.report["certificates"] = reports;
  if (!all) out.exit_code = kExitCertificate;
  return out;
}

inline Outcome run_tfhydrogen(const ModelParams& p) {
  const auto shot = tf::shoot();
  const auto direct = tf::minimize(1.0);
  // e_TF = (3/7) B / b1 with B = -phi'(0) and b1 = (1/2)(3 pi / 4)^{2/3}
  const double b1 = 0.5 * std::pow(0.75 * kPi, 2.0 / 3.0);
  Outcome out;
  out.report["initial_slope"] = shot.slope;
  out.report["e_tf"] = shot.energy;
  out.report["e_tf_closed_form"] = 3.0 / 7.0 * shot.slope / b1;
  out.report["bisections"] = shot.bisections;
  out.report["direct_energy"] = -direct.energy;
  out.report["direct_iterations"] = direct.iterations;
  out.report["relative_difference"] = std::abs(-direct.energy - shot.energy) / shot.energy;
  out.report["atom_energy"] = -shot.energy * std::pow(p.Z, 7.0 / 3.0);
  return out;
}

} // namespace detail

/// Non-finite numbers become null, as they would on output.
inline void sanitize(Json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    j = nullptr;
  } else if (j.is_structured()) {
    for (auto& v : j) sanitize(v);
  }
}

inline Json error_report(const RunConfig& cfg, const std::string& kind, const std::string& message) {
  Json j;
  j["tool"] = "tfwd";
  j["version"] = kVersion;
  j["command"] = cfg.command;
  j["status"] = "error";
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

/// Validates and runs one command. Exceptions are mapped to exit codes.
inline Outcome dispatch(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    validate(cfg);
    const auto p = resolve_params(cfg);
    Outcome body;
    if (cfg.command == "evaluate") body = detail::run_evaluate(cfg, p);
    else if (cfg.command == "bound") body = detail::run_bound(cfg, p);
    else if (cfg.command == "minimize") body = detail::run_minimize(cfg, p);
    else if (cfg.command == "excess") body = detail::run_excess(cfg, p);
    else if (cfg.command == "certify") body = detail::run_certify(cfg);
    else body = detail::run_tfhydrogen(p);
    out.exit_code = body.exit_code;
    out.report["tool"] = "tfwd";
    out.report["version"] = kVersion;
    out.report["command"] = cfg.command;
    out.report["status"] = body.exit_code == kExitOk ? "ok" : body.exit_code == kExitConvergence ? "not_converged" : "certificate_failure";
    out.report["inputs"] = detail::inputs_json(cfg, p);
    out.report["result"] = std::move(body.report);
    sanitize(out.report);
  } catch (const ConvergenceError& e) {
    out = {kExitConvergence, error_report(cfg, "convergence", e.what())};
  } catch (const SolverError& e) {
    out = {kExitConvergence, error_report(cfg, "convergence", e.what())};
  } catch (const std::exception& e) {
    out = {kExitValidation, error_report(cfg, "validation", e.what())};
  }
  if (cfg.timing)
    out.report["timing"] = {{"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  return out;
}

inline std::string render(const Json& report) { return report.dump(2) + "\n"; }

} // namespace tfwd::cli
