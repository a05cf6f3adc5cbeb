// Confinement potentials on a finite 1D domain with hard walls at both ends.
//
// Partitioned variants carry a shape parameter l (the partition position).
// The infinite partition is structural: it is never evaluated pointwise, the
// eigensolver splits the domain at x = l instead.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "shapeq/core.hpp"

namespace shapeq {

/// Flat-bottom infinite well on [0, L].
struct InfiniteWell {
  double L = 100.0;
};

/// Parabolic trap with oscillator length L_osc, hard walls at 0 and L_domain.
struct Harmonic {
  double L_osc = 10.0;
  double L_domain = 100.0;
  double center = 50.0;
};

/// Infinite well split by an impenetrable wall at x = l.
struct InfiniteWellInfinitePartition {
  double L = 100.0;
  double l = 50.0;
};

/// Infinite well with a Gaussian partition h exp(-(x - l)^2 / (2 w^2)).
struct InfiniteWellGaussianBump {
  double L = 100.0;
  double l = 50.0;
  double h = 0.057;
  double w = 1.0;
};

/// Parabola centred at L/2 plus a Gaussian partition, hard walls at 0 and L.
struct HarmonicGaussianBump {
  double L = 100.0;
  double L_osc = 15.0;
  double l = 50.0;
  double h = 0.057;
  double w = 1.0;
};

using Geometry = std::variant<InfiniteWell, Harmonic, InfiniteWellInfinitePartition,
                              InfiniteWellGaussianBump, HarmonicGaussianBump>;

struct PotentialSpec {
  Geometry geometry;
  double mass_ratio = constants::electron_mass_ratio_default;
};

/// Config-file tag for the variant: infinite_well, harmonic,
/// infinite_partition, box_bump, harmonic_bump.
std::string_view type_name(const PotentialSpec& spec);

/// Length of the hard-walled domain [0, L].
double domain_length(const PotentialSpec& spec);

bool is_split_domain(const PotentialSpec& spec);

/// All invariant violations; empty when the spec is valid.
std::vector<std::string> validate(const PotentialSpec& spec);

/// Throws DomainError listing every violation.
void require_valid(const PotentialSpec& spec);

/// V(x) in eV for 0 <= x <= L.
double evaluate(const PotentialSpec& spec, double x);

namespace detail {
/// evaluate() without validation or range checks, for grid sampling.
double evaluate_unchecked(const PotentialSpec& spec, double x);
}  // namespace detail

/// Reflection x -> L - x.
PotentialSpec mirror(const PotentialSpec& spec);

/// Partition position, if the variant has one.
std::optional<double> shape_parameter(const PotentialSpec& spec);
PotentialSpec with_shape_parameter(const PotentialSpec& spec, double l);

/// How lengths react when the size parameter changes.
enum class ShapeConvention {
  FixedFraction,  ///< l/L held fixed; w, h, L_osc held fixed
  FixedAbsolute,  ///< l held fixed in nm
};

/// The length that sets the size of the system: L for wells, L_osc for the
/// pure harmonic trap.
double size_parameter(const PotentialSpec& spec);

/// Rescales the system to a new size. For the pure harmonic trap the domain
/// and centre scale with L_osc, so the whole spectrum scales as 1/L_osc^2.
PotentialSpec with_size(const PotentialSpec& spec, double size,
                        ShapeConvention convention = ShapeConvention::FixedFraction);

/// Canonical text form (all parameters at 17 significant digits).
std::string describe(const PotentialSpec& spec);

/// Stable 64-bit FNV-1a digest of describe(), as 16 hex digits.
std::string spec_hash(const PotentialSpec& spec);

}  // namespace shapeq
