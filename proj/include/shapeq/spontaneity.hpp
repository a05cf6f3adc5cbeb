// Classification of isothermal processes by the signs of dF, dU and dS.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "shapeq/thermo.hpp"

namespace shapeq {

enum class SpontaneityClass { Typical, EnergyDriven, EntropyDriven, NonSpontaneous, Boundary };

/// typical | energy | entropy | nonspont | boundary
std::string_view to_string(SpontaneityClass c);

inline constexpr double kDefaultEpsilon = 1e-12;
inline constexpr double kIdentityTolerance = 1e-10;

/// Change of the dimensionless state functions from an initial to a final state.
struct StateDelta {
  double dF = 0.0;
  double dU = 0.0;
  double dS = 0.0;

  static StateDelta between(const ThermoQuantities& initial, const ThermoQuantities& final_state);
  StateDelta reversed() const { return {-dF, -dU, -dS}; }
};

/// dF >= eps: NonSpontaneous. Otherwise any |d| < eps: Boundary. Otherwise
/// dS < 0: EnergyDriven, dU > 0: EntropyDriven, else Typical.
/// Throws DomainError when |dF - (dU - dS)| > kIdentityTolerance.
SpontaneityClass classify(const StateDelta& delta, double epsilon = kDefaultEpsilon);

/// Class of whichever direction is spontaneous: a NonSpontaneous process is
/// replaced by the class of its reverse.
SpontaneityClass classify_spontaneous_direction(const StateDelta& delta,
                                                double epsilon = kDefaultEpsilon);

/// How map cells are labelled.
enum class MapLabel {
  Forward,                ///< process reference -> cell
  SpontaneousDirection,   ///< whichever of reference -> cell, cell -> reference lowers F
};

struct MapCell {
  double Eg_tilde = 0.0;
  double gap_tilde = 0.0;
  StateDelta delta;
  SpontaneityClass label = SpontaneityClass::Boundary;
};

struct AxisRange {
  double start = 0.0;
  double end = 0.0;
};

struct SpontaneityMap {
  TwoLevelInput reference;
  std::vector<double> Eg_axis;
  std::vector<double> gap_axis;
  std::vector<MapCell> cells;  ///< Eg-major: cells[i * gap_axis.size() + j]

  const MapCell& at(std::size_t eg_index, std::size_t gap_index) const {
    return cells[eg_index * gap_axis.size() + gap_index];
  }
};

/// Uniform axis of `count` nodes over [start, end]. When `anchor` lies inside
/// the range the nodes are shifted (by less than half a step) so that one
/// node equals the anchor exactly.
std::vector<double> make_axis(const AxisRange& range, std::size_t count, double anchor);

/// Two-level spontaneity map relative to `reference`.
SpontaneityMap build_map(const TwoLevelInput& reference, const AxisRange& Eg_range,
                         const AxisRange& gap_range, std::size_t resolution,
                         MapLabel label = MapLabel::Forward,
                         double epsilon = kDefaultEpsilon);

/// What each point of a path is compared with.
enum class PathReference {
  Fixed,     ///< the point at reference_index
  Stepwise,  ///< the preceding point (the first point is Boundary)
};

std::vector<StateDelta> path_deltas(std::span<const ThermoQuantities> points,
                                    std::size_t reference_index,
                                    PathReference mode = PathReference::Fixed);

std::vector<SpontaneityClass> classify_path(std::span<const ThermoQuantities> points,
                                            std::size_t reference_index,
                                            PathReference mode = PathReference::Fixed,
                                            double epsilon = kDefaultEpsilon);

/// "Eg_over_kT,gap_over_kT,dF,dU,dS,class"
void write_map_csv(std::ostream& os, const SpontaneityMap& map);

}  // namespace shapeq
