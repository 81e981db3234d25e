#include <tfwd/cli.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> out, density, density_out, seed_profile, seed_path, mass_mode;
  std::optional<double> Z, c, lambda, N, kappa, tol_energy, tol_grad, flat_tol, alpha;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid_size, resolution;
  std::optional<int> max_iters;
  std::vector<std::string> certificates;
  bool timing = false;
};

template <class T, class U>
void take(const std::optional<T>& v, U& target) {
  if (v) target = *v;
}

int write_report(const tfwd::cli::Json& report, const std::string& path) {
  const auto text = tfwd::cli::render(report);
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "tfwd: error: cannot write report to '" << path << "'\n";
    return 1;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  using namespace tfwd;
  CLI::App app{"Relativistic Thomas-Fermi-Weizsaecker-Dirac energies, bounds and certificates", "tfwd"};
  app.set_version_flag("--version", std::string(cli::kVersion));
  app.require_subcommand(0, 1);
  app.fallthrough();

  Overrides ov;
  app.add_option("--config", ov.config, "Config file: key = value lines or a JSON object");
  app.add_option("--out", ov.out, "Report path (default: stdout)");
  app.add_option("--seed", ov.seed, "Random seed for certificates");
  app.add_option("--grid-size", ov.grid_size, "Radial grid size for the solver");
  app.add_option("--Z", ov.Z, "Nuclear charge");
  app.add_option("--c", ov.c, "Speed of light");
  app.add_option("--lambda", ov.lambda, "Weizsaecker prefactor");
  app.add_option("--N", ov.N, "Electron number (default Z)");
  app.add_option("--kappa", ov.kappa, "Coupling Z/(c sqrt(lambda)); fixes c");
  app.add_flag("--timing", ov.timing, "Append wall-clock timing to the report");

  auto* evaluate = app.add_subcommand("evaluate", "Energy of a density read from a file");
  evaluate->add_option("--density", ov.density, "Two-column density file (default: bundled hydrogenic density)");
  app.add_subcommand("bound", "Thomas-Fermi-type lower bound")
      ->add_option("--alpha", ov.alpha, "Exponent of the exchange bound, in [0, 4]");
  auto* minimize = app.add_subcommand("minimize", "Minimize the functional at fixed N");
  auto* excess = app.add_subcommand("excess", "Scan N for the maximal bound electron number");
  for (auto* sub : {minimize, excess}) {
    sub->add_option("--max-iters", ov.max_iters);
    sub->add_option("--tol-energy", ov.tol_energy);
    sub->add_option("--tol-grad", ov.tol_grad);
    sub->add_option("--seed-profile", ov.seed_profile, "hydrogenic | thomas_fermi | custom");
    sub->add_option("--seed-path", ov.seed_path, "Density file for the custom seed");
    sub->add_option("--mass-mode", ov.mass_mode, "equality | at_most");
  }
  minimize->add_option("--density-out", ov.density_out, "Write the minimizer to this file");
  excess->add_option("--flat-tol", ov.flat_tol, "Energy change below which E(N) counts as flat");
  auto* certify = app.add_subcommand("certify", "Run the numerical certificates");
  certify->add_option("--resolution", ov.resolution, "Scan resolution (>= 100)");
  certify->add_option("--name", ov.certificates, "Certificate to run (repeatable; default all)");
  app.add_subcommand("tfhydrogen", "Thomas-Fermi energy constant by two methods");

  CLI11_PARSE(app, argc, argv);

  cli::RunConfig cfg;
  try {
    if (!ov.config.empty()) cli::load_config_file(cfg, ov.config);
    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
      const std::string name = subs.front()->get_name();
      if (!cfg.command.empty() && cfg.command != name)
        throw ParseError("config command '" + cfg.command + "' conflicts with command line '" + name + "'");
      cfg.command = name;
    }
    take(ov.out, cfg.out);
    take(ov.density, cfg.density);
    take(ov.density_out, cfg.density_out);
    take(ov.seed, cfg.seed);
    take(ov.grid_size, cfg.grid_size);
    take(ov.resolution, cfg.resolution);
    take(ov.flat_tol, cfg.flat_tol);
    take(ov.alpha, cfg.alpha);
    if (ov.Z) cfg.Z = ov.Z;
    if (ov.lambda) cfg.lambda = ov.lambda;
    if (ov.N) cfg.N = ov.N;
    // a command-line c or kappa replaces the other one from the config
    if (ov.c) {
      cfg.c = ov.c;
      if (!ov.kappa) cfg.kappa.reset();
    }
    if (ov.kappa) {
      cfg.kappa = ov.kappa;
      if (!ov.c) cfg.c.reset();
    }
    take(ov.max_iters, cfg.options.max_iters);
    take(ov.tol_energy, cfg.options.tol_energy);
    take(ov.tol_grad, cfg.options.tol_grad);
    if (ov.seed_profile) cfg.options.seed_profile = solver::parse_seed_profile(*ov.seed_profile);
    take(ov.seed_path, cfg.options.seed_path);
    if (ov.mass_mode) cfg.options.mass_mode = solver::parse_mass_mode(*ov.mass_mode);
    if (!ov.certificates.empty()) cfg.certificates = ov.certificates;
    if (ov.timing) cfg.timing = true;
  } catch (const std::exception& e) {
    std::cerr << "tfwd: error: " << e.what() << "\n";
    if (cfg.command.empty() && !app.get_subcommands().empty()) cfg.command = app.get_subcommands().front()->get_name();
    write_report(cli::error_report(cfg, "validation", e.what()), ov.out.value_or(cfg.out));
    return cli::kExitValidation;
  }

  const auto outcome = cli::dispatch(cfg);
  if (outcome.report.contains("error")) std::cerr << "tfwd: error: " << outcome.report["error"]["message"].get<std::string>() << "\n";
  if (write_report(outcome.report, cfg.out) != 0) return cli::kExitValidation;
  return outcome.exit_code;
}
