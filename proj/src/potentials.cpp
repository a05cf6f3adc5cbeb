#include "shapeq/potentials.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "shapeq/format.hpp"

namespace shapeq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double gaussian_bump(double x, double l, double h, double w) {
  const double d = x - l;
  return h * std::exp(-(d * d) / (2.0 * w * w));
}

void check_positive(std::vector<std::string>& out, const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) out.push_back(std::string(name) + " must be positive");
}

void check_partition(std::vector<std::string>& out, double l, double L) {
  if (!(l > 0.0 && l < L) || !std::isfinite(l)) {
    out.push_back("l must lie strictly inside (0, L)");
  }
}

void check_bump(std::vector<std::string>& out, double h, double w) {
  if (!(h >= 0.0) || !std::isfinite(h)) out.push_back("h must be non-negative");
  check_positive(out, "w", w);
}

}  // namespace

std::string_view type_name(const PotentialSpec& spec) {
  return std::visit(overloaded{
                        [](const InfiniteWell&) { return std::string_view("infinite_well"); },
                        [](const Harmonic&) { return std::string_view("harmonic"); },
                        [](const InfiniteWellInfinitePartition&) {
                          return std::string_view("infinite_partition");
                        },
                        [](const InfiniteWellGaussianBump&) { return std::string_view("box_bump"); },
                        [](const HarmonicGaussianBump&) {
                          return std::string_view("harmonic_bump");
                        },
                    },
                    spec.geometry);
}

double domain_length(const PotentialSpec& spec) {
  return std::visit(overloaded{
                        [](const Harmonic& g) { return g.L_domain; },
                        [](const auto& g) { return g.L; },
                    },
                    spec.geometry);
}

bool is_split_domain(const PotentialSpec& spec) {
  return std::holds_alternative<InfiniteWellInfinitePartition>(spec.geometry);
}

std::vector<std::string> validate(const PotentialSpec& spec) {
  std::vector<std::string> out;
  check_positive(out, "mass_ratio", spec.mass_ratio);
  std::visit(overloaded{
                 [&](const InfiniteWell& g) { check_positive(out, "L", g.L); },
                 [&](const Harmonic& g) {
                   check_positive(out, "L_osc", g.L_osc);
                   check_positive(out, "L_domain", g.L_domain);
                   if (!(g.center >= 0.0 && g.center <= g.L_domain)) {
                     out.push_back("center must lie inside [0, L_domain]");
                   }
                 },
                 [&](const InfiniteWellInfinitePartition& g) {
                   check_positive(out, "L", g.L);
                   check_partition(out, g.l, g.L);
                 },
                 [&](const InfiniteWellGaussianBump& g) {
                   check_positive(out, "L", g.L);
                   check_partition(out, g.l, g.L);
                   check_bump(out, g.h, g.w);
                 },
                 [&](const HarmonicGaussianBump& g) {
                   check_positive(out, "L", g.L);
                   check_positive(out, "L_osc", g.L_osc);
                   check_partition(out, g.l, g.L);
                   check_bump(out, g.h, g.w);
                 },
             },
             spec.geometry);
  return out;
}

void require_valid(const PotentialSpec& spec) {
  const auto problems = validate(spec);
  if (problems.empty()) return;
  std::string message = "invalid potential:";
  for (const auto& p : problems) message += " " + p + ";";
  throw DomainError(message);
}

double evaluate(const PotentialSpec& spec, double x) {
  require_valid(spec);
  const double L = domain_length(spec);
  if (!(x >= 0.0 && x <= L)) throw DomainError("x outside the domain [0, L]");
  return detail::evaluate_unchecked(spec, x);
}

double detail::evaluate_unchecked(const PotentialSpec& spec, double x) {
  const double kinetic = kinetic_coefficient(spec.mass_ratio);
  return std::visit(
      overloaded{
          [](const InfiniteWell&) { return 0.0; },
          [&](const Harmonic& g) {
            const double d = x - g.center;
            return kinetic / std::pow(g.L_osc, 4) * d * d;
          },
          [](const InfiniteWellInfinitePartition&) -> double {
            throw DomainError("the infinite partition has no pointwise value; solve it by splitting");
          },
          [&](const InfiniteWellGaussianBump& g) { return gaussian_bump(x, g.l, g.h, g.w); },
          [&](const HarmonicGaussianBump& g) {
            const double d = x - 0.5 * g.L;
            return kinetic / std::pow(g.L_osc, 4) * d * d + gaussian_bump(x, g.l, g.h, g.w);
          },
      },
      spec.geometry);
}

PotentialSpec mirror(const PotentialSpec& spec) {
  require_valid(spec);
  PotentialSpec out = spec;
  std::visit(overloaded{
                 [](InfiniteWell&) {},
                 [](Harmonic& g) { g.center = g.L_domain - g.center; },
                 [](auto& g) { g.l = g.L - g.l; },
             },
             out.geometry);
  return out;
}

std::optional<double> shape_parameter(const PotentialSpec& spec) {
  return std::visit(overloaded{
                        [](const InfiniteWell&) -> std::optional<double> { return std::nullopt; },
                        [](const Harmonic&) -> std::optional<double> { return std::nullopt; },
                        [](const auto& g) -> std::optional<double> { return g.l; },
                    },
                    spec.geometry);
}

PotentialSpec with_shape_parameter(const PotentialSpec& spec, double l) {
  PotentialSpec out = spec;
  std::visit(overloaded{
                 [](InfiniteWell&) { throw DomainError("infinite_well has no shape parameter"); },
                 [](Harmonic&) { throw DomainError("harmonic has no shape parameter"); },
                 [l](auto& g) { g.l = l; },
             },
             out.geometry);
  return out;
}

double size_parameter(const PotentialSpec& spec) {
  return std::visit(overloaded{
                        [](const Harmonic& g) { return g.L_osc; },
                        [](const auto& g) { return g.L; },
                    },
                    spec.geometry);
}

PotentialSpec with_size(const PotentialSpec& spec, double size, ShapeConvention convention) {
  if (!(size > 0.0)) throw DomainError("size must be positive");
  PotentialSpec out = spec;
  std::visit(overloaded{
                 [&](InfiniteWell& g) { g.L = size; },
                 [&](Harmonic& g) {
                   const double scale = size / g.L_osc;
                   g.L_osc = size;
                   g.L_domain *= scale;
                   g.center *= scale;
                 },
                 [&](auto& g) {
                   if (convention == ShapeConvention::FixedFraction) g.l *= size / g.L;
                   g.L = size;
                 },
             },
             out.geometry);
  return out;
}

std::string describe(const PotentialSpec& spec) {
  std::ostringstream os;
  os << type_name(spec) << "{mass_ratio=" << format_number(spec.mass_ratio);
  std::visit(overloaded{
                 [&](const InfiniteWell& g) { os << ",L=" << format_number(g.L); },
                 [&](const Harmonic& g) {
                   os << ",L_osc=" << format_number(g.L_osc)
                      << ",L_domain=" << format_number(g.L_domain)
                      << ",center=" << format_number(g.center);
                 },
                 [&](const InfiniteWellInfinitePartition& g) {
                   os << ",L=" << format_number(g.L) << ",l=" << format_number(g.l);
                 },
                 [&](const InfiniteWellGaussianBump& g) {
                   os << ",L=" << format_number(g.L) << ",l=" << format_number(g.l)
                      << ",h=" << format_number(g.h) << ",w=" << format_number(g.w);
                 },
                 [&](const HarmonicGaussianBump& g) {
                   os << ",L=" << format_number(g.L) << ",L_osc=" << format_number(g.L_osc)
                      << ",l=" << format_number(g.l) << ",h=" << format_number(g.h)
                      << ",w=" << format_number(g.w);
                 },
             },
             spec.geometry);
  os << "}";
  return os.str();
}

std::string spec_hash(const PotentialSpec& spec) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char c : describe(spec)) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace shapeq
