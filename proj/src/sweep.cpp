#include "shapeq/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "shapeq/format.hpp"

namespace shapeq {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config parsing

double number_at(const json& tree, const char* key) {
  if (!tree.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  const json& v = tree.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& tree, const char* key, double fallback) {
  return tree.contains(key) ? number_at(tree, key) : fallback;
}

std::size_t count_or(const json& tree, const char* key, std::size_t fallback) {
  if (!tree.contains(key)) return fallback;
  const json& v = tree.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_at(const json& tree, const char* key) {
  if (!tree.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  const json& v = tree.at(key);
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::string string_or(const json& tree, const char* key, const std::string& fallback) {
  return tree.contains(key) ? string_at(tree, key) : fallback;
}

const json& object_at(const json& tree, const char* key) {
  if (!tree.contains(key) || !tree.at(key).is_object()) {
    throw ConfigError(std::string("'") + key + "' must be an object");
  }
  return tree.at(key);
}

AxisRange range_at(const json& tree, const char* key, AxisRange fallback) {
  if (!tree.contains(key)) return fallback;
  const json& v = tree.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(std::string("'") + key + "' must be a [start, end] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

PotentialSpec parse_potential(const json& tree) {
  const std::string type = string_at(tree, "type");
  PotentialSpec spec;
  spec.mass_ratio = number_or(tree, "mass_ratio", constants::electron_mass_ratio_default);
  if (type == "infinite_well") {
    spec.geometry = InfiniteWell{number_at(tree, "L_nm")};
  } else if (type == "harmonic") {
    const double L = number_at(tree, "L_nm");
    spec.geometry = Harmonic{number_at(tree, "L_osc_nm"), L, number_or(tree, "center_nm", 0.5 * L)};
  } else if (type == "infinite_partition") {
    spec.geometry = InfiniteWellInfinitePartition{number_at(tree, "L_nm"), number_at(tree, "l_nm")};
  } else if (type == "box_bump") {
    spec.geometry = InfiniteWellGaussianBump{number_at(tree, "L_nm"), number_at(tree, "l_nm"),
                                             number_or(tree, "h_eV", 0.057),
                                             number_or(tree, "w_nm", 1.0)};
  } else if (type == "harmonic_bump") {
    spec.geometry = HarmonicGaussianBump{number_at(tree, "L_nm"), number_at(tree, "L_osc_nm"),
                                         number_at(tree, "l_nm"), number_or(tree, "h_eV", 0.057),
                                         number_or(tree, "w_nm", 1.0)};
  } else {
    throw ConfigError("unknown potential type '" + type + "'");
  }
  const auto problems = validate(spec);
  if (!problems.empty()) {
    std::string message = "invalid potential:";
    for (const auto& p : problems) message += " " + p + ";";
    throw ConfigError(message);
  }
  return spec;
}

json potential_to_json(const PotentialSpec& spec) {
  json out;
  out["type"] = std::string(type_name(spec));
  out["mass_ratio"] = spec.mass_ratio;
  if (const auto* g = std::get_if<InfiniteWell>(&spec.geometry)) {
    out["L_nm"] = g->L;
  } else if (const auto* g = std::get_if<Harmonic>(&spec.geometry)) {
    out["L_nm"] = g->L_domain;
    out["L_osc_nm"] = g->L_osc;
    out["center_nm"] = g->center;
  } else if (const auto* g = std::get_if<InfiniteWellInfinitePartition>(&spec.geometry)) {
    out["L_nm"] = g->L;
    out["l_nm"] = g->l;
  } else if (const auto* g = std::get_if<InfiniteWellGaussianBump>(&spec.geometry)) {
    out["L_nm"] = g->L;
    out["l_nm"] = g->l;
    out["h_eV"] = g->h;
    out["w_nm"] = g->w;
  } else if (const auto* g = std::get_if<HarmonicGaussianBump>(&spec.geometry)) {
    out["L_nm"] = g->L;
    out["L_osc_nm"] = g->L_osc;
    out["l_nm"] = g->l;
    out["h_eV"] = g->h;
    out["w_nm"] = g->w;
  }
  return out;
}

OutputKind parse_output(const std::string& s) {
  if (s == "sweep_csv") return OutputKind::SweepCsv;
  if (s == "trajectory_csv") return OutputKind::TrajectoryCsv;
  if (s == "summary_json") return OutputKind::SummaryJson;
  if (s == "map_csv") return OutputKind::MapCsv;
  throw ConfigError("unknown output '" + s + "'");
}

std::string output_name(OutputKind kind) {
  switch (kind) {
    case OutputKind::SweepCsv:
      return "sweep_csv";
    case OutputKind::TrajectoryCsv:
      return "trajectory_csv";
    case OutputKind::SummaryJson:
      return "summary_json";
    case OutputKind::MapCsv:
      return "map_csv";
  }
  return "sweep_csv";
}

// ---------------------------------------------------------------------------
// Solving

bool tail_resolved(const Spectrum& spectrum, double kT) {
  const double spread = (spectrum.levels.back() - spectrum.levels.front()) / kT;
  return std::exp(-spread) < kTruncationWeight;
}

std::size_t levels_above_cutoff(const Spectrum& spectrum, double kT) {
  const double E0 = spectrum.levels.front();
  return static_cast<std::size_t>(
      std::count_if(spectrum.levels.begin(), spectrum.levels.end(), [&](double E) {
        return std::exp(-(E - E0) / kT) >= kTruncationWeight;
      }));
}

Spectrum solve_fixed(const SweepConfig& config, const PotentialSpec& spec, std::size_t k,
                     std::size_t n_interior, std::span<const double> hints) {
  if (is_split_domain(spec)) return solve_split(spec, k, config.solver);
  return solve_on_grid(spec, k, n_interior, hints);
}

std::size_t closest_index(const std::vector<double>& values, double target) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i] - target) < std::abs(values[best] - target)) best = i;
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

SweepConfig parse_config(const json& tree) {
  if (!tree.is_object()) throw ConfigError("config must be a JSON object");
  if (!tree.contains("schema") || !tree.at("schema").is_number_integer() ||
      tree.at("schema").get<int>() != kConfigSchema) {
    throw ConfigError("config must declare \"schema\": 1");
  }
  SweepConfig config;
  config.name = string_or(tree, "name", "sweep");
  config.potential = parse_potential(object_at(tree, "potential"));
  config.temperature_K = number_at(tree, "temperature_K");

  const std::string mode = string_or(tree, "mode", "two_level");
  if (mode == "two_level") {
    config.mode = ThermoMode::TwoLevel;
  } else if (mode == "n_level") {
    config.mode = ThermoMode::NLevel;
  } else {
    throw ConfigError("mode must be two_level or n_level");
  }

  config.has_sweep = tree.contains("sweep");
  if (config.has_sweep) {
    const json& sweep = object_at(tree, "sweep");
    const std::string variable = string_at(sweep, "variable");
    if (variable == "L") {
      config.variable = SweepVariable::Size;
    } else if (variable == "l") {
      config.variable = SweepVariable::Shape;
    } else {
      throw ConfigError("sweep.variable must be L or l");
    }
    config.start_nm = number_at(sweep, "start_nm");
    config.end_nm = number_at(sweep, "end_nm");
    config.steps = count_or(sweep, "steps", config.steps);
  }

  if (tree.contains("outputs")) {
    const json& outputs = tree.at("outputs");
    if (!outputs.is_array()) throw ConfigError("outputs must be a list");
    config.outputs.clear();
    for (const json& o : outputs) {
      if (!o.is_string()) throw ConfigError("outputs entries must be strings");
      config.outputs.push_back(parse_output(o.get<std::string>()));
    }
  }

  if (tree.contains("solver")) {
    const json& solver = object_at(tree, "solver");
    config.solver.n_interior = count_or(solver, "n_interior", config.solver.n_interior);
    config.solver.rel_tol = number_or(solver, "rel_tol", config.solver.rel_tol);
    config.solver.max_points = count_or(solver, "max_points", config.solver.max_points);
    config.solver.degeneracy_tol = number_or(solver, "degeneracy_tol", config.solver.degeneracy_tol);
    config.levels = count_or(solver, "levels", config.levels);
    const std::string split = string_or(solver, "split", "analytic");
    if (split == "analytic") {
      config.solver.split = SplitMethod::Analytic;
    } else if (split == "numeric") {
      config.solver.split = SplitMethod::Numeric;
    } else {
      throw ConfigError("solver.split must be analytic or numeric");
    }
  }

  if (tree.contains("classification")) {
    const json& c = object_at(tree, "classification");
    if (c.contains("reference_param_nm") && !c.at("reference_param_nm").is_null()) {
      config.reference_param_nm = number_at(c, "reference_param_nm");
    }
    const std::string path = string_or(c, "path", "fixed");
    if (path == "fixed") {
      config.path_reference = PathReference::Fixed;
    } else if (path == "stepwise") {
      config.path_reference = PathReference::Stepwise;
    } else {
      throw ConfigError("classification.path must be fixed or stepwise");
    }
    config.epsilon = number_or(c, "epsilon", config.epsilon);
  }

  if (tree.contains("pressure")) {
    const json& p = object_at(tree, "pressure");
    if (p.contains("enabled")) {
      if (!p.at("enabled").is_boolean()) throw ConfigError("pressure.enabled must be a boolean");
      config.pressure_enabled = p.at("enabled").get<bool>();
    }
    config.pressure_step_rel = number_or(p, "step_rel", config.pressure_step_rel);
    const std::string convention = string_or(p, "shape_convention", "fixed_fraction");
    if (convention == "fixed_fraction") {
      config.shape_convention = ShapeConvention::FixedFraction;
    } else if (convention == "fixed_absolute") {
      config.shape_convention = ShapeConvention::FixedAbsolute;
    } else {
      throw ConfigError("pressure.shape_convention must be fixed_fraction or fixed_absolute");
    }
  }

  if (tree.contains("map")) {
    const json& m = object_at(tree, "map");
    MapSettings settings;
    const AxisRange reference = range_at(m, "reference", {0.5, 3.0});
    settings.reference = TwoLevelInput{reference.start, reference.end};
    settings.Eg_range = range_at(m, "Eg_range", settings.Eg_range);
    settings.gap_range = range_at(m, "gap_range", settings.gap_range);
    settings.resolution = count_or(m, "resolution", settings.resolution);
    const std::string label = string_or(m, "label", "forward");
    if (label == "forward") {
      settings.label = MapLabel::Forward;
    } else if (label == "spontaneous") {
      settings.label = MapLabel::SpontaneousDirection;
    } else {
      throw ConfigError("map.label must be forward or spontaneous");
    }
    config.map = settings;
  }

  validate_config(config);
  return config;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json tree;
  try {
    tree = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  return parse_config(tree);
}

json to_json(const SweepConfig& config) {
  json out;
  out["schema"] = kConfigSchema;
  out["name"] = config.name;
  out["potential"] = potential_to_json(config.potential);
  if (config.has_sweep) {
    out["sweep"] = {{"variable", config.variable == SweepVariable::Size ? "L" : "l"},
                  {"start_nm", config.start_nm},
                  {"end_nm", config.end_nm},
                    {"steps", config.steps}};
  }
  out["temperature_K"] = config.temperature_K;
  out["mode"] = config.mode == ThermoMode::TwoLevel ? "two_level" : "n_level";
  json outputs = json::array();
  for (const OutputKind kind : config.outputs) outputs.push_back(output_name(kind));
  out["outputs"] = outputs;
  out["solver"] = {{"n_interior", config.solver.n_interior},
                   {"rel_tol", config.solver.rel_tol},
                   {"max_points", config.solver.max_points},
                   {"degeneracy_tol", config.solver.degeneracy_tol},
                   {"levels", config.levels},
                   {"split", config.solver.split == SplitMethod::Analytic ? "analytic" : "numeric"}};
  json classification = {
      {"path", config.path_reference == PathReference::Fixed ? "fixed" : "stepwise"},
      {"epsilon", config.epsilon}};
  classification["reference_param_nm"] =
      config.reference_param_nm ? json(*config.reference_param_nm) : json(nullptr);
  out["classification"] = classification;
  out["pressure"] = {{"enabled", config.pressure_enabled},
                     {"step_rel", config.pressure_step_rel},
                     {"shape_convention", config.shape_convention == ShapeConvention::FixedFraction
                                              ? "fixed_fraction"
                                              : "fixed_absolute"}};
  if (config.map) {
    const MapSettings& m = *config.map;
    out["map"] = {{"reference", {m.reference.Eg_tilde, m.reference.gap_tilde}},
                  {"Eg_range", {m.Eg_range.start, m.Eg_range.end}},
                  {"gap_range", {m.gap_range.start, m.gap_range.end}},
                  {"resolution", m.resolution},
                  {"label", m.label == MapLabel::Forward ? "forward" : "spontaneous"}};
  }
  return out;
}

void validate_config(const SweepConfig& config) {
  if (config.steps < 2) throw ConfigError("sweep.steps must be at least 2");
  if (!(config.temperature_K > 0.0) || !std::isfinite(config.temperature_K)) {
    throw ConfigError("temperature_K must be positive");
  }
  if (!(config.solver.rel_tol > 0.0)) throw ConfigError("solver.rel_tol must be positive");
  if (config.solver.n_interior < kMinGridPoints) {
    throw ConfigError("solver.n_interior must be at least " + std::to_string(kMinGridPoints));
  }
  if (!(config.pressure_step_rel > 0.0 && config.pressure_step_rel < 0.1)) {
    throw ConfigError("pressure.step_rel must lie in (0, 0.1)");
  }
  if (!(config.epsilon >= 0.0)) throw ConfigError("classification.epsilon must be non-negative");
  if (config.map && config.map->resolution < 2) {
    throw ConfigError("map.resolution must be at least 2");
  }
  if (!config.has_sweep) return;
  if (!std::isfinite(config.start_nm) || !std::isfinite(config.end_nm) ||
      config.start_nm == config.end_nm) {
    throw ConfigError("sweep range must have positive length");
  }
  if (config.variable == SweepVariable::Shape && !shape_parameter(config.potential)) {
    throw ConfigError("potential '" + std::string(type_name(config.potential)) +
                      "' has no shape parameter l to sweep");
  }
  for (const double value : {config.start_nm, config.end_nm}) {
    const auto problems = validate(potential_at(config, value));
    if (!problems.empty()) {
      throw ConfigError("sweep point " + format_number(value) + " nm is invalid: " +
                        problems.front());
    }
  }
}

std::vector<double> sweep_values(const SweepConfig& config) {
  std::vector<double> values(config.steps);
  const double step = (config.end_nm - config.start_nm) / static_cast<double>(config.steps - 1);
  for (std::size_t i = 0; i < config.steps; ++i) {
    values[i] = config.start_nm + static_cast<double>(i) * step;
  }
  values.back() = config.end_nm;
  return values;
}

PotentialSpec potential_at(const SweepConfig& config, double param) {
  if (config.variable == SweepVariable::Shape) {
    return with_shape_parameter(config.potential, param);
  }
  return with_size(config.potential, param, config.shape_convention);
}

// ---------------------------------------------------------------------------
// Per-point evaluation

Spectrum solve_for_mode(const SweepConfig& config, const PotentialSpec& spec) {
  if (config.mode == ThermoMode::TwoLevel) return solve(spec, 2, config.solver);

  const double kT = thermal_energy(config.temperature_K);
  const std::size_t cap = std::max<std::size_t>(2, config.solver.n_interior / 2);
  std::size_t k = std::max<std::size_t>(2, config.levels == 0 ? 8 : config.levels);

  // Size the level count on the starting grid before refining. Coarse levels
  // sit below the converged ones, so the count can only be generous.
  if (!is_split_domain(spec)) {
    while (k < cap) {
      const Spectrum coarse = solve_on_grid(spec, k, config.solver.n_interior);
      if (tail_resolved(coarse, kT)) {
        k = std::max<std::size_t>(2, levels_above_cutoff(coarse, kT) + 1);
        break;
      }
      k = std::min(cap, 2 * k);
    }
  }
  while (true) {
    Spectrum spectrum = solve(spec, k, config.solver);
    if (tail_resolved(spectrum, kT) || k >= cap) return spectrum;
    k = std::min(cap, 2 * k);
  }
}

ThermoQuantities thermo_for_mode(const SweepConfig& config, const Spectrum& spectrum) {
  return config.mode == ThermoMode::TwoLevel ? two_level(spectrum, config.temperature_K)
                                             : n_level(spectrum, config.temperature_K);
}

double gap_for_mode(const SweepConfig& config, const Spectrum& spectrum) {
  if (config.mode == ThermoMode::TwoLevel) return spectrum.levels[1] - spectrum.levels[0];
  return mean_level_spacing(spectrum, config.temperature_K);
}

bool SweepResult::all_converged() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.converged; });
}

SweepResult run_sweep(const SweepConfig& config) {
  validate_config(config);
  if (!config.has_sweep) throw ConfigError("config has no sweep block");
  SweepResult result;
  result.config = config;

  const std::vector<double> params = sweep_values(config);
  std::vector<ThermoQuantities> path;
  std::vector<double> pressures;
  for (const double param : params) {
    const PotentialSpec spec = potential_at(config, param);
    const Spectrum spectrum = solve_for_mode(config, spec);

    SweepRow row;
    row.param_nm = param;
    row.Eg_eV = spectrum.levels.front();
    row.gap_eV = gap_for_mode(config, spectrum);
    row.thermo = thermo_for_mode(config, spectrum);
    row.converged = spectrum.converged;
    row.levels_used = spectrum.k();
    row.n_interior = spectrum.n_interior;

    if (config.pressure_enabled) {
      // Same grid and level count on the whole stencil, so discretization
      // error does not leak into the derivative.
      const auto free_energy = [&](double size) {
        const PotentialSpec resized = with_size(spec, size, config.shape_convention);
        const Spectrum s =
            solve_fixed(config, resized, spectrum.k(), spectrum.n_interior, spectrum.levels);
        return thermo_for_mode(config, s).F_tilde;
      };
      const double size = size_parameter(spec);
      row.pressure = pressure(free_energy, size, config.pressure_step_rel * size);
    }
    pressures.push_back(row.pressure);
    path.push_back(row.thermo);
    result.rows.push_back(row);
  }

  const std::vector<double> normalized = normalize_by_max(pressures);
  result.reference_index =
      config.reference_param_nm ? closest_index(params, *config.reference_param_nm) : 0;
  const std::vector<StateDelta> deltas =
      path_deltas(path, result.reference_index, config.path_reference);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    result.rows[i].P_norm = normalized[i];
    result.rows[i].delta = deltas[i];
    result.rows[i].label = classify(deltas[i], config.epsilon);
  }
  return result;
}

SpontaneityMap run_map(const SweepConfig& config) {
  if (config.mode != ThermoMode::TwoLevel) {
    throw ConfigError(
        "spontaneity maps exist only for two-level systems; use trajectory classification in "
        "n_level mode");
  }
  const MapSettings settings = config.map.value_or(MapSettings{});
  return build_map(settings.reference, settings.Eg_range, settings.gap_range, settings.resolution,
                   settings.label, config.epsilon);
}

// ---------------------------------------------------------------------------
// Summaries and files

std::vector<ClassInterval> class_intervals(const SweepResult& result) {
  std::vector<ClassInterval> out;
  const auto& rows = result.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].label == SpontaneityClass::Boundary) continue;
    if (i > 0 && rows[i - 1].label == rows[i].label) {
      out.back().end_nm = rows[i].param_nm;
      ++out.back().rows;
    } else {
      out.push_back({rows[i].label, rows[i].param_nm, rows[i].param_nm, 1});
    }
  }
  return out;
}

std::string monotonicity(const std::vector<double>& values) {
  bool increasing = true;
  bool decreasing = true;
  bool constant = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) increasing = false;
    if (!(values[i] < values[i - 1])) decreasing = false;
    if (values[i] != values[i - 1]) constant = false;
  }
  if (values.size() < 2) return "constant";
  if (constant) return "constant";
  if (increasing) return "strictly_increasing";
  if (decreasing) return "strictly_decreasing";
  return "non_monotone";
}

json emit_summary(const SweepResult& result) {
  if (result.rows.empty()) throw DomainError("cannot summarize an empty sweep");
  const auto column = [&](auto getter) {
    std::vector<double> v;
    for (const SweepRow& row : result.rows) v.push_back(getter(row));
    return v;
  };
  const auto argmax = [&](const std::vector<double>& v) {
    return result.rows[static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())]
        .param_nm;
  };

  json summary;
  summary["schema"] = kConfigSchema;
  summary["config"] = to_json(result.config);
  summary["rows"] = result.rows.size();
  summary["reference_param_nm"] = result.rows[result.reference_index].param_nm;

  json intervals = json::array();
  for (const ClassInterval& interval : class_intervals(result)) {
    intervals.push_back({{"class", std::string(to_string(interval.label))},
                         {"start_nm", interval.start_nm},
                         {"end_nm", interval.end_nm},
                         {"rows", interval.rows}});
  }
  summary["intervals"] = intervals;

  const std::vector<double> heat = column([](const SweepRow& r) { return r.thermo.C_tilde; });
  const std::vector<double> gap = column([](const SweepRow& r) { return r.gap_eV; });
  summary["extrema"] = {{"argmax_C_tilde_nm", argmax(heat)}, {"argmax_gap_nm", argmax(gap)}};

  json verdicts;
  verdicts["Eg"] = monotonicity(column([](const SweepRow& r) { return r.Eg_eV; }));
  verdicts["gap"] = monotonicity(gap);
  verdicts["F_tilde"] = monotonicity(column([](const SweepRow& r) { return r.thermo.F_tilde; }));
  verdicts["U_tilde"] = monotonicity(column([](const SweepRow& r) { return r.thermo.U_tilde; }));
  verdicts["S_tilde"] = monotonicity(column([](const SweepRow& r) { return r.thermo.S_tilde; }));
  verdicts["P"] = result.config.pressure_enabled
                      ? json(monotonicity(column([](const SweepRow& r) { return r.pressure; })))
                      : json(nullptr);
  summary["monotonicity"] = verdicts;

  json unconverged = json::array();
  std::size_t max_grid = 0;
  std::size_t truncation_warnings = 0;
  for (const SweepRow& row : result.rows) {
    if (!row.converged) unconverged.push_back(row.param_nm);
    max_grid = std::max(max_grid, row.n_interior);
    if (row.thermo.truncation_warning) ++truncation_warnings;
  }
  summary["convergence"] = {{"all_converged", unconverged.empty()},
                            {"unconverged_params_nm", unconverged},
                            {"max_grid_points", max_grid}};
  summary["truncation_warnings"] = truncation_warnings;
  return summary;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << "param_nm,Eg_eV,gap_eV,zeta,F_tilde,U_tilde,S_tilde,C_tilde,P_norm,class\n";
  for (const SweepRow& row : result.rows) {
    os << format_number(row.param_nm) << ',' << format_number(row.Eg_eV) << ','
       << format_number(row.gap_eV) << ',' << format_number(row.thermo.zeta) << ','
       << format_number(row.thermo.F_tilde) << ',' << format_number(row.thermo.U_tilde) << ','
       << format_number(row.thermo.S_tilde) << ',' << format_number(row.thermo.C_tilde) << ','
       << format_number(row.P_norm) << ',' << to_string(row.label) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const SweepResult& result) {
  os << "param_nm,Eg_eV,gap_eV,dF,dU,dS,class\n";
  for (const SweepRow& row : result.rows) {
    os << format_number(row.param_nm) << ',' << format_number(row.Eg_eV) << ','
       << format_number(row.gap_eV) << ',' << format_number(row.delta.dF) << ','
       << format_number(row.delta.dU) << ',' << format_number(row.delta.dS) << ','
       << to_string(row.label) << '\n';
  }
}

std::vector<std::filesystem::path> write_outputs(const SweepResult& result,
                                                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  const auto finish = [](std::ofstream& os, const std::filesystem::path& path) {
    os.flush();
    if (!os) throw std::ios_base::failure("failed writing " + path.string());
  };
  const auto open = [&](const std::string& suffix) {
    const std::filesystem::path path = out_dir / (result.config.name + suffix);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot write " + path.string());
    written.push_back(path);
    return os;
  };
  for (const OutputKind kind : result.config.outputs) {
    switch (kind) {
      case OutputKind::SweepCsv: {
        auto os = open("_sweep.csv");
        write_sweep_csv(os, result);
        finish(os, written.back());
        break;
      }
      case OutputKind::TrajectoryCsv: {
        auto os = open("_trajectory.csv");
        write_trajectory_csv(os, result);
        finish(os, written.back());
        break;
      }
      case OutputKind::SummaryJson: {
        auto os = open("_summary.json");
        os << emit_summary(result).dump(2) << '\n';
        finish(os, written.back());
        break;
      }
      case OutputKind::MapCsv: {
        auto os = open("_map.csv");
        write_map_csv(os, run_map(result.config));
        finish(os, written.back());
        break;
      }
    }
  }
  return written;
}

}  // namespace shapeq
