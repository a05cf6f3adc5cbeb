#include "shapeq/core.hpp"

#include <cmath>

namespace shapeq {

double kinetic_coefficient(double mass_ratio) {
  if (!(mass_ratio > 0.0) || !std::isfinite(mass_ratio)) {
    throw DomainError("mass_ratio must be positive and finite");
  }
  return constants::hbar_sq_over_2me / mass_ratio;
}

double thermal_energy(double temperature_K) {
  if (!(temperature_K > 0.0) || !std::isfinite(temperature_K)) {
    throw DomainError("temperature must be positive and finite");
  }
  return constants::boltzmann * temperature_K;
}

DimensionlessEnergy normalize_energy(double energy_eV, double temperature_K) {
  const double value = energy_eV / thermal_energy(temperature_K);
  if (!std::isfinite(value)) {
    throw DomainError("normalized energy is not finite");
  }
  return DimensionlessEnergy(value);
}

}  // namespace shapeq
