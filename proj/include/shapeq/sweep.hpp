// Configuration-driven sweeps: potential -> spectrum -> thermodynamics ->
// spontaneity class -> pressure, with deterministic file output.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "shapeq/eigensolver.hpp"
#include "shapeq/potentials.hpp"
#include "shapeq/spontaneity.hpp"
#include "shapeq/thermo.hpp"

namespace shapeq {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class SweepVariable { Size, Shape };  // "L" | "l"
enum class ThermoMode { TwoLevel, NLevel };
enum class OutputKind { SweepCsv, TrajectoryCsv, SummaryJson, MapCsv };

struct MapSettings {
  TwoLevelInput reference{0.5, 3.0};
  AxisRange Eg_range{0.05, 1.0};
  AxisRange gap_range{0.5, 6.0};
  std::size_t resolution = 241;
  MapLabel label = MapLabel::Forward;
};

inline constexpr int kConfigSchema = 1;

struct SweepConfig {
  std::string name = "sweep";
  PotentialSpec potential;
  bool has_sweep = true;  ///< false for single-potential configs
  SweepVariable variable = SweepVariable::Shape;
  double start_nm = 50.0;
  double end_nm = 99.0;
  std::size_t steps = 50;
  double temperature_K = 10.0;
  ThermoMode mode = ThermoMode::TwoLevel;
  std::vector<OutputKind> outputs{OutputKind::SweepCsv, OutputKind::SummaryJson};

  SolverOptions solver;
  /// Levels to solve. Two-level mode always uses 2; n-level mode starts here
  /// (0 = automatic) and grows until the Boltzmann tail is resolved.
  std::size_t levels = 0;

  std::optional<double> reference_param_nm;  ///< default: first sweep point
  PathReference path_reference = PathReference::Fixed;
  double epsilon = kDefaultEpsilon;

  bool pressure_enabled = true;
  double pressure_step_rel = 1e-4;
  ShapeConvention shape_convention = ShapeConvention::FixedFraction;

  std::optional<MapSettings> map;
};

/// Parses and validates a config tree (schema 1). Throws ConfigError.
SweepConfig parse_config(const nlohmann::json& tree);
SweepConfig load_config(const std::filesystem::path& path);

/// Canonical tree of the effective config (round-trips through parse_config).
nlohmann::json to_json(const SweepConfig& config);

/// Throws ConfigError for an inconsistent config.
void validate_config(const SweepConfig& config);

/// Evenly spaced sweep parameter values, start to end inclusive.
std::vector<double> sweep_values(const SweepConfig& config);

/// Template potential with the sweep variable set to `param`.
PotentialSpec potential_at(const SweepConfig& config, double param);

/// Spectrum for one potential in the configured mode: two levels, or enough
/// levels to resolve the Boltzmann tail in n-level mode.
Spectrum solve_for_mode(const SweepConfig& config, const PotentialSpec& spec);

/// Thermodynamics of a solved spectrum in the configured mode.
ThermoQuantities thermo_for_mode(const SweepConfig& config, const Spectrum& spectrum);

/// E_2 - E_1 in two-level mode, <dE>_T in n-level mode (eV).
double gap_for_mode(const SweepConfig& config, const Spectrum& spectrum);

struct SweepRow {
  double param_nm = 0.0;
  double Eg_eV = 0.0;
  double gap_eV = 0.0;
  ThermoQuantities thermo;
  double pressure = 0.0;  ///< k_B T per nm
  double P_norm = 0.0;
  StateDelta delta;
  SpontaneityClass label = SpontaneityClass::Boundary;
  bool converged = true;
  std::size_t levels_used = 0;
  std::size_t n_interior = 0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepRow> rows;
  std::size_t reference_index = 0;

  bool all_converged() const;
};

SweepResult run_sweep(const SweepConfig& config);

/// Two-level spectrum map from the config's map block (defaults when absent).
/// Throws ConfigError in n-level mode.
SpontaneityMap run_map(const SweepConfig& config);

/// Contiguous runs of one non-boundary class along the sweep.
struct ClassInterval {
  SpontaneityClass label;
  double start_nm;
  double end_nm;
  std::size_t rows;
};
std::vector<ClassInterval> class_intervals(const SweepResult& result);

/// strictly_increasing | strictly_decreasing | constant | non_monotone
std::string monotonicity(const std::vector<double>& values);

nlohmann::json emit_summary(const SweepResult& result);

/// "param_nm,Eg_eV,gap_eV,zeta,F_tilde,U_tilde,S_tilde,C_tilde,P_norm,class"
void write_sweep_csv(std::ostream& os, const SweepResult& result);
/// "param_nm,Eg_eV,gap_eV,dF,dU,dS,class"
void write_trajectory_csv(std::ostream& os, const SweepResult& result);

/// Writes every configured output into out_dir as <name>_<kind>.<ext>.
/// Returns the paths written. Throws std::ios_base::failure on I/O errors.
std::vector<std::filesystem::path> write_outputs(const SweepResult& result,
                                                 const std::filesystem::path& out_dir);

}  // namespace shapeq
