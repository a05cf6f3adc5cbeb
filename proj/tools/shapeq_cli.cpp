// Command-line front end: spectrum, thermo, sweep and map subcommands.
//
// Exit codes: 0 success, 2 config error, 3 solver non-convergence, 4 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "shapeq/eigensolver.hpp"
#include "shapeq/sweep.hpp"
#include "shapeq/thermo.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct Overrides {
  std::string config_path;
  std::optional<double> temperature;
  std::optional<std::size_t> steps;
  std::string out_dir = ".";
  bool allow_unconverged = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Config file (JSON, schema 1)")->required();
  cmd->add_option("--T", o.temperature, "Override temperature_K");
  cmd->add_option("--steps", o.steps, "Override sweep.steps");
  cmd->add_option("--out-dir", o.out_dir, "Directory for output files");
  cmd->add_flag("--allow-unconverged", o.allow_unconverged,
                "Exit 0 even when a solve hit the grid cap");
}

shapeq::SweepConfig load(const Overrides& o) {
  shapeq::SweepConfig config = shapeq::load_config(o.config_path);
  if (o.temperature) config.temperature_K = *o.temperature;
  if (o.steps) config.steps = *o.steps;
  shapeq::validate_config(config);
  return config;
}

std::ofstream open_output(const Overrides& o, const std::string& file) {
  std::filesystem::create_directories(o.out_dir);
  const std::filesystem::path path = std::filesystem::path(o.out_dir) / file;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot write " + path.string());
  std::cout << path.string() << '\n';
  return os;
}

void check_written(std::ofstream& os) {
  os.flush();
  if (!os) throw std::ios_base::failure("write failed");
}

int unconverged_exit(bool converged, const Overrides& o) {
  if (converged || o.allow_unconverged) return 0;
  std::cerr << "error: at least one solve did not converge (use --allow-unconverged)\n";
  return kExitSolver;
}

int run_spectrum(const Overrides& o) {
  const shapeq::SweepConfig config = load(o);
  const std::size_t k = config.levels == 0 ? 10 : config.levels;
  const shapeq::Spectrum spectrum = shapeq::solve(config.potential, k, config.solver);
  auto os = open_output(o, config.name + "_spectrum.csv");
  shapeq::write_spectrum_csv(os, spectrum);
  check_written(os);
  return unconverged_exit(spectrum.converged, o);
}

int run_thermo(const Overrides& o) {
  const shapeq::SweepConfig config = load(o);
  const shapeq::Spectrum spectrum = shapeq::solve_for_mode(config, config.potential);
  const shapeq::ThermoQuantities q = shapeq::thermo_for_mode(config, spectrum);
  auto os = open_output(o, config.name + "_thermo.csv");
  shapeq::write_thermo_csv_header(os);
  shapeq::write_thermo_csv_row(os, q);
  check_written(os);
  if (q.truncation_warning) std::cerr << "warning: Boltzmann tail not resolved by the spectrum\n";
  return unconverged_exit(spectrum.converged, o);
}

int run_sweep(const Overrides& o) {
  const shapeq::SweepConfig config = load(o);
  const shapeq::SweepResult result = shapeq::run_sweep(config);
  for (const auto& path : shapeq::write_outputs(result, o.out_dir)) {
    std::cout << path.string() << '\n';
  }
  return unconverged_exit(result.all_converged(), o);
}

int run_map(const Overrides& o) {
  const shapeq::SweepConfig config = load(o);
  const shapeq::SpontaneityMap map = shapeq::run_map(config);
  auto os = open_output(o, config.name + "_map.csv");
  shapeq::write_map_csv(os, map);
  check_written(os);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confined 1D spectra, canonical thermodynamics and spontaneity classification"};
  app.require_subcommand(1);

  Overrides overrides;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Lowest levels of the config's potential");
  CLI::App* thermo = app.add_subcommand("thermo", "State functions of the config's potential");
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep with classification");
  CLI::App* map = app.add_subcommand("map", "Two-level spontaneity map");
  for (CLI::App* cmd : {spectrum, thermo, sweep, map}) add_common(cmd, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(overrides);
    if (thermo->parsed()) return run_thermo(overrides);
    if (sweep->parsed()) return run_sweep(overrides);
    if (map->parsed()) return run_map(overrides);
  } catch (const shapeq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const shapeq::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const shapeq::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitConfig;
}
