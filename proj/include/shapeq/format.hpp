#pragma once

#include <string>

namespace shapeq {

/// Shortest-to-17-digit, locale-independent rendering used by every output
/// file ("%.17g" semantics, '.' separator).
std::string format_number(double value);

}  // namespace shapeq
