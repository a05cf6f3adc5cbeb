// Canonical-ensemble state functions.
//
// All quantities are dimensionless: energies and free energy in units of
// k_B T, entropy and heat capacity in units of k_B.

#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "shapeq/eigensolver.hpp"

namespace shapeq {

struct ThermoQuantities {
  double zeta = 0.0;
  double F_tilde = 0.0;
  double U_tilde = 0.0;
  double S_tilde = 0.0;
  double C_tilde = 0.0;
  double T = 0.0;  ///< K; 0 when evaluated from dimensionless input
  bool truncation_warning = false;
};

struct TwoLevelInput {
  double Eg_tilde = 0.0;   ///< ground-state energy / k_B T
  double gap_tilde = 0.0;  ///< (E_2 - E_1) / k_B T, non-negative
};

struct OccupationSet {
  std::vector<double> p;
};

/// Boltzmann weights kept by n_level: exp(-(E_n - E_1)/k_B T) >= this.
inline constexpr double kTruncationWeight = 1e-14;
/// Tail estimate above this fraction of zeta flags the result.
inline constexpr double kTailWarning = 1e-10;

/// Closed-form two-level partition function, free energy, internal energy,
/// entropy and heat capacity, with f(E) = exp(-E):
///   zeta = f(Eg) + f(Eg + dE)
///   F    = Eg - ln[1 + f(dE)]
///   U    = Eg + dE / (1 + f(-dE))
///   S    = dE / (1 + f(-dE)) + ln[1 + f(dE)]
///   C    = [dE / (f(-dE/2) + f(dE/2))]^2
ThermoQuantities two_level(const TwoLevelInput& input);

/// Two-level quantities from the two lowest levels of a spectrum.
ThermoQuantities two_level(const Spectrum& spectrum, double temperature_K);

/// Thermal excitation term dE / (1 + e^dE) of the two-level internal energy.
double excitation_energy(double gap_tilde);

/// Boltzmann occupations over every level of the spectrum.
OccupationSet occupation_probabilities(const Spectrum& spectrum, double temperature_K);

/// Exact canonical sums over the spectrum, truncated once the relative
/// Boltzmann weight falls below kTruncationWeight (at least two levels).
/// C is the population variance of E / k_B T.
ThermoQuantities n_level(const Spectrum& spectrum, double temperature_K);

/// Occupation-weighted consecutive gap:
///   <dE>_T = sum_{n<N} p_n (E_{n+1} - E_n) / sum_{n<N} p_n
double mean_level_spacing(const Spectrum& spectrum, double temperature_K);

/// Free energy F/(k_B T) as a function of the size parameter L (nm).
using FreeEnergyOfSize = std::function<double(double)>;

class StepSizeError : public DomainError {
 public:
  explicit StepSizeError(const std::string& what) : DomainError(what) {}
};

/// P = -dF/dL by central differences, in units of k_B T per nm. The stencil
/// L - delta, L - delta/2, L + delta/2, L + delta must give monotone F
/// unless the change is below round-off; otherwise StepSizeError.
double pressure(const FreeEnergyOfSize& free_energy, double L, double delta_L);

/// Default stencil half-width: L * 1e-4.
inline double default_pressure_step(double L) { return L * 1e-4; }

/// P / max|P| over a sweep; all zeros stay zero.
std::vector<double> normalize_by_max(const std::vector<double>& values);

/// "T_K,zeta,F_tilde,U_tilde,S_tilde,C_tilde"
void write_thermo_csv_header(std::ostream& os);
void write_thermo_csv_row(std::ostream& os, const ThermoQuantities& q);

}  // namespace shapeq
