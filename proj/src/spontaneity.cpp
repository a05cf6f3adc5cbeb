#include "shapeq/spontaneity.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "shapeq/format.hpp"

namespace shapeq {

std::string_view to_string(SpontaneityClass c) {
  switch (c) {
    case SpontaneityClass::Typical:
      return "typical";
    case SpontaneityClass::EnergyDriven:
      return "energy";
    case SpontaneityClass::EntropyDriven:
      return "entropy";
    case SpontaneityClass::NonSpontaneous:
      return "nonspont";
    case SpontaneityClass::Boundary:
      return "boundary";
  }
  return "boundary";
}

StateDelta StateDelta::between(const ThermoQuantities& initial,
                               const ThermoQuantities& final_state) {
  return {final_state.F_tilde - initial.F_tilde, final_state.U_tilde - initial.U_tilde,
          final_state.S_tilde - initial.S_tilde};
}

SpontaneityClass classify(const StateDelta& delta, double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
  if (!(std::abs(delta.dF - (delta.dU - delta.dS)) <= kIdentityTolerance)) {
    throw DomainError("state delta violates dF = dU - dS");
  }
  if (delta.dF >= epsilon) return SpontaneityClass::NonSpontaneous;
  if (std::abs(delta.dF) < epsilon || std::abs(delta.dU) < epsilon ||
      std::abs(delta.dS) < epsilon) {
    return SpontaneityClass::Boundary;
  }
  if (delta.dU > 0.0 && delta.dS < 0.0) {
    // dF = dU - dS would be positive.
    throw std::logic_error("unreachable sign pattern dF<0, dU>0, dS<0");
  }
  if (delta.dS < 0.0) return SpontaneityClass::EnergyDriven;
  if (delta.dU > 0.0) return SpontaneityClass::EntropyDriven;
  return SpontaneityClass::Typical;
}

SpontaneityClass classify_spontaneous_direction(const StateDelta& delta, double epsilon) {
  const SpontaneityClass forward = classify(delta, epsilon);
  if (forward != SpontaneityClass::NonSpontaneous) return forward;
  return classify(delta.reversed(), epsilon);
}

std::vector<double> make_axis(const AxisRange& range, std::size_t count, double anchor) {
  if (count < 2) throw DomainError("axis needs at least two nodes");
  if (!(range.end > range.start) || !std::isfinite(range.start) || !std::isfinite(range.end)) {
    throw DomainError("axis range must have positive length");
  }
  const double step = (range.end - range.start) / static_cast<double>(count - 1);
  std::vector<double> axis(count);
  if (anchor >= range.start && anchor <= range.end) {
    const double anchor_index = std::round((anchor - range.start) / step);
    for (std::size_t i = 0; i < count; ++i) {
      axis[i] = anchor + (static_cast<double>(i) - anchor_index) * step;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      axis[i] = range.start + static_cast<double>(i) * step;
    }
  }
  return axis;
}

SpontaneityMap build_map(const TwoLevelInput& reference, const AxisRange& Eg_range,
                         const AxisRange& gap_range, std::size_t resolution, MapLabel label,
                         double epsilon) {
  SpontaneityMap map;
  map.reference = reference;
  map.Eg_axis = make_axis(Eg_range, resolution, reference.Eg_tilde);
  map.gap_axis = make_axis(gap_range, resolution, reference.gap_tilde);
  if (map.gap_axis.front() < 0.0) throw DomainError("gap axis must stay non-negative");

  const ThermoQuantities initial = two_level(reference);
  map.cells.reserve(map.Eg_axis.size() * map.gap_axis.size());
  for (const double eg : map.Eg_axis) {
    for (const double gap : map.gap_axis) {
      MapCell cell;
      cell.Eg_tilde = eg;
      cell.gap_tilde = gap;
      cell.delta = StateDelta::between(initial, two_level(TwoLevelInput{eg, gap}));
      cell.label = label == MapLabel::Forward
                       ? classify(cell.delta, epsilon)
                       : classify_spontaneous_direction(cell.delta, epsilon);
      map.cells.push_back(cell);
    }
  }
  return map;
}

std::vector<StateDelta> path_deltas(std::span<const ThermoQuantities> points,
                                    std::size_t reference_index, PathReference mode) {
  if (points.size() < 2) throw DomainError("a path needs at least two points");
  if (reference_index >= points.size()) throw DomainError("reference index out of range");
  std::vector<StateDelta> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (mode == PathReference::Fixed) {
      out[i] = StateDelta::between(points[reference_index], points[i]);
    } else {
      out[i] = i == 0 ? StateDelta{} : StateDelta::between(points[i - 1], points[i]);
    }
  }
  return out;
}

std::vector<SpontaneityClass> classify_path(std::span<const ThermoQuantities> points,
                                            std::size_t reference_index, PathReference mode,
                                            double epsilon) {
  const std::vector<StateDelta> deltas = path_deltas(points, reference_index, mode);
  std::vector<SpontaneityClass> out;
  out.reserve(deltas.size());
  for (const StateDelta& d : deltas) out.push_back(classify(d, epsilon));
  return out;
}

void write_map_csv(std::ostream& os, const SpontaneityMap& map) {
  os << "Eg_over_kT,gap_over_kT,dF,dU,dS,class\n";
  for (const MapCell& cell : map.cells) {
    os << format_number(cell.Eg_tilde) << ',' << format_number(cell.gap_tilde) << ','
       << format_number(cell.delta.dF) << ',' << format_number(cell.delta.dU) << ','
       << format_number(cell.delta.dS) << ',' << to_string(cell.label) << '\n';
  }
}

}  // namespace shapeq
