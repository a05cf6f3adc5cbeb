#include <cmath>

#include "doctest.h"
#include "shapeq/core.hpp"
#include "shapeq/format.hpp"

using namespace shapeq;

TEST_CASE("kinetic coefficient follows the effective mass") {
  CHECK(kinetic_coefficient(1.0) == doctest::Approx(0.0380998).epsilon(1e-6));
  CHECK(kinetic_coefficient(0.067) == doctest::Approx(0.568654).epsilon(1e-6));
  CHECK(kinetic_coefficient(0.067) == constants::hbar_sq_over_2me / 0.067);
  CHECK_THROWS_AS(kinetic_coefficient(0.0), DomainError);
  CHECK_THROWS_AS(kinetic_coefficient(-0.5), DomainError);
  CHECK_THROWS_AS(kinetic_coefficient(std::nan("")), DomainError);
}

TEST_CASE("thermal energy") {
  CHECK(thermal_energy(10.0) == doctest::Approx(8.617333e-4).epsilon(1e-7));
  CHECK(thermal_energy(300.0) == doctest::Approx(2.585200e-2).epsilon(1e-7));
  CHECK_THROWS_AS(thermal_energy(-1.0), DomainError);
  CHECK_THROWS_AS(thermal_energy(0.0), DomainError);
}

TEST_CASE("normalized energies") {
  CHECK(normalize_energy(0.0, 42.0).value() == 0.0);
  CHECK(normalize_energy(8.617333e-4, 10.0).value() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(normalize_energy(5.613e-4, 10.0).value() == doctest::Approx(0.6514).epsilon(1e-4));
  CHECK_THROWS_AS(normalize_energy(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(normalize_energy(1.0, -3.0), DomainError);
}

TEST_CASE("round trip k_B T / k_B T is one") {
  for (double T = 0.01; T < 1e5; T *= 1.37) {
    CHECK(normalize_energy(thermal_energy(T), T).value() == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("joint rescaling of energy and temperature") {
  const double E = 3.7e-3;
  const double T = 17.0;
  for (const double c : {0.25, 2.0, 10.0, 1e3}) {
    CHECK(normalize_energy(c * E, c * T).value() ==
          doctest::Approx(normalize_energy(E, T).value()).epsilon(1e-14));
  }
}

TEST_CASE("number formatting is exact and locale independent") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-2.0) == "-2");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_number(5e-324) == "4.9406564584124654e-324");
  for (const double x : {1.0 / 3.0, 5.6123904781e-04, -7.25e12}) {
    CHECK(std::stod(format_number(x)) == x);
  }
}
