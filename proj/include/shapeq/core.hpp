// Physical constants and unit conventions.
//
// Internal units: energy in eV, length in nm, temperature in K.
// Dimensionless energies are E / (k_B T).

#pragma once

#include <stdexcept>
#include <string>

namespace shapeq {

namespace constants {

/// hbar^2 / (2 m_e) in eV nm^2 (CODATA 2018).
inline constexpr double hbar_sq_over_2me = 0.03809982111;
/// Boltzmann constant in eV/K (CODATA 2018, exact).
inline constexpr double boltzmann = 8.617333262e-5;
/// GaAs conduction-band effective mass in units of m_e.
inline constexpr double electron_mass_ratio_default = 0.067;

}  // namespace constants

/// Raised when an argument lies outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when an iterative solver fails to converge.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionlessEnergy {
 public:
  double value() const noexcept { return value_; }

 private:
  explicit DimensionlessEnergy(double v) noexcept : value_(v) {}
  friend DimensionlessEnergy normalize_energy(double energy_eV, double temperature_K);
  double value_;
};

/// hbar^2 / (2 m) for an effective mass m = mass_ratio * m_e, in eV nm^2.
double kinetic_coefficient(double mass_ratio);

/// k_B T in eV.
double thermal_energy(double temperature_K);

/// E / (k_B T).
DimensionlessEnergy normalize_energy(double energy_eV, double temperature_K);

}  // namespace shapeq
