#include "shapeq/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "shapeq/format.hpp"

namespace shapeq {

namespace {

double boltzmann_factor(double e) { return std::exp(-e); }

void require_levels(const Spectrum& spectrum, std::size_t minimum) {
  if (spectrum.levels.size() < minimum) {
    throw DomainError("spectrum needs at least " + std::to_string(minimum) + " level(s)");
  }
}

// Ground-state-shifted reduced energies (E_n - E_1) / k_B T.
std::vector<double> shifted_energies(const Spectrum& spectrum, double temperature_K) {
  const double kT = thermal_energy(temperature_K);
  std::vector<double> s(spectrum.levels.size());
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = (spectrum.levels[n] - spectrum.levels[0]) / kT;
  return s;
}

}  // namespace

double excitation_energy(double gap_tilde) {
  return gap_tilde / (1.0 + boltzmann_factor(-gap_tilde));
}

ThermoQuantities two_level(const TwoLevelInput& input) {
  const double eg = input.Eg_tilde;
  const double gap = input.gap_tilde;
  if (!(gap >= 0.0) || !std::isfinite(gap) || !std::isfinite(eg)) {
    throw DomainError("two-level gap must be finite and non-negative");
  }
  const double excitation = excitation_energy(gap);
  const double fluctuation = std::log1p(boltzmann_factor(gap));
  const double heat = gap / (boltzmann_factor(-0.5 * gap) + boltzmann_factor(0.5 * gap));

  ThermoQuantities q;
  q.zeta = boltzmann_factor(eg) + boltzmann_factor(eg + gap);
  q.F_tilde = eg - fluctuation;
  q.U_tilde = eg + excitation;
  q.S_tilde = excitation + fluctuation;
  q.C_tilde = heat * heat;
  return q;
}

ThermoQuantities two_level(const Spectrum& spectrum, double temperature_K) {
  require_levels(spectrum, 2);
  const double kT = thermal_energy(temperature_K);
  ThermoQuantities q = two_level(TwoLevelInput{
      spectrum.levels[0] / kT, (spectrum.levels[1] - spectrum.levels[0]) / kT});
  q.T = temperature_K;
  return q;
}

OccupationSet occupation_probabilities(const Spectrum& spectrum, double temperature_K) {
  require_levels(spectrum, 1);
  const std::vector<double> s = shifted_energies(spectrum, temperature_K);
  OccupationSet out;
  out.p.resize(s.size());
  double z = 0.0;
  for (std::size_t n = 0; n < s.size(); ++n) {
    out.p[n] = boltzmann_factor(s[n]);
    z += out.p[n];
  }
  for (double& p : out.p) p /= z;
  return out;
}

ThermoQuantities n_level(const Spectrum& spectrum, double temperature_K) {
  require_levels(spectrum, 1);
  const std::vector<double> s = shifted_energies(spectrum, temperature_K);

  std::size_t used = std::min<std::size_t>(2, s.size());
  while (used < s.size() && boltzmann_factor(s[used]) >= kTruncationWeight) ++used;

  double z = 0.0;
  for (std::size_t n = 0; n < used; ++n) z += boltzmann_factor(s[n]);
  double mean = 0.0;
  for (std::size_t n = 0; n < used; ++n) mean += boltzmann_factor(s[n]) / z * s[n];
  double variance = 0.0;
  for (std::size_t n = 0; n < used; ++n) {
    const double d = s[n] - mean;
    variance += boltzmann_factor(s[n]) / z * d * d;
  }

  const double ground = normalize_energy(spectrum.levels[0], temperature_K).value();
  const double log_z = std::log(z);
  ThermoQuantities q;
  q.T = temperature_K;
  q.zeta = std::exp(-ground) * z;
  q.F_tilde = ground - log_z;
  q.U_tilde = ground + mean;
  q.S_tilde = mean + log_z;
  q.C_tilde = variance;
  q.truncation_warning =
      used == s.size() && boltzmann_factor(s[used - 1]) / z > kTailWarning;
  return q;
}

double mean_level_spacing(const Spectrum& spectrum, double temperature_K) {
  require_levels(spectrum, 2);
  const std::vector<double> s = shifted_energies(spectrum, temperature_K);
  double weighted = 0.0;
  double norm = 0.0;
  for (std::size_t n = 0; n + 1 < s.size(); ++n) {
    const double w = boltzmann_factor(s[n]);
    weighted += w * (spectrum.levels[n + 1] - spectrum.levels[n]);
    norm += w;
  }
  return weighted / norm;
}

double pressure(const FreeEnergyOfSize& free_energy, double L, double delta_L) {
  if (!(delta_L > 0.0) || !(L > 0.0) || !(delta_L < L)) {
    throw DomainError("pressure step must satisfy 0 < delta_L < L");
  }
  const double f[4] = {free_energy(L - delta_L), free_energy(L - 0.5 * delta_L),
                       free_energy(L + 0.5 * delta_L), free_energy(L + delta_L)};
  double magnitude = 0.0;
  for (const double v : f) magnitude = std::max(magnitude, std::abs(v));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
  const double d1 = f[1] - f[0];
  const double d2 = f[2] - f[1];
  const double d3 = f[3] - f[2];
  const bool resolved = std::abs(f[3] - f[0]) > floor;
  const bool increasing = d1 >= -floor && d2 >= -floor && d3 >= -floor;
  const bool decreasing = d1 <= floor && d2 <= floor && d3 <= floor;
  if (resolved && !increasing && !decreasing) {
    throw StepSizeError("free energy is not monotone across the pressure stencil at L=" +
                        format_number(L) + " nm; reduce delta_L");
  }
  return -(f[3] - f[0]) / (2.0 * delta_L);
}

std::vector<double> normalize_by_max(const std::vector<double>& values) {
  double largest = 0.0;
  for (const double v : values) largest = std::max(largest, std::abs(v));
  std::vector<double> out(values.size(), 0.0);
  if (largest == 0.0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / largest;
  return out;
}

void write_thermo_csv_header(std::ostream& os) {
  os << "T_K,zeta,F_tilde,U_tilde,S_tilde,C_tilde\n";
}

void write_thermo_csv_row(std::ostream& os, const ThermoQuantities& q) {
  os << format_number(q.T) << ',' << format_number(q.zeta) << ',' << format_number(q.F_tilde)
     << ',' << format_number(q.U_tilde) << ',' << format_number(q.S_tilde) << ','
     << format_number(q.C_tilde) << '\n';
}

}  // namespace shapeq
