#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "shapeq/spontaneity.hpp"

using namespace shapeq;

namespace {

StateDelta delta_to(const TwoLevelInput& from, const TwoLevelInput& to) {
  return StateDelta::between(two_level(from), two_level(to));
}

// Number of 4-connected components of cells carrying `label`.
int components(const SpontaneityMap& map, SpontaneityClass label) {
  const std::size_t rows = map.Eg_axis.size(), cols = map.gap_axis.size();
  std::vector<int> seen(rows * cols, 0);
  int count = 0;
  for (std::size_t start = 0; start < rows * cols; ++start) {
    if (seen[start] || map.cells[start].label != label) continue;
    ++count;
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const std::size_t i = c / cols, j = c % cols;
      const std::array<std::pair<long, long>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
      for (const auto& [di, dj] : steps) {
        const long ni = static_cast<long>(i) + di, nj = static_cast<long>(j) + dj;
        if (ni < 0 || nj < 0 || ni >= static_cast<long>(rows) || nj >= static_cast<long>(cols)) continue;
        const std::size_t n = static_cast<std::size_t>(ni) * cols + static_cast<std::size_t>(nj);
        if (!seen[n] && map.cells[n].label == label) {
          seen[n] = 1;
          stack.push_back(n);
        }
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("classification by sign pattern") {
  CHECK(classify({-1.5, -1.0, 0.5}) == SpontaneityClass::Typical);
  CHECK(classify({-0.2, -0.5, -0.3}) == SpontaneityClass::EnergyDriven);
  CHECK(classify({-0.3, 0.2, 0.5}) == SpontaneityClass::EntropyDriven);
  CHECK(classify({0.3, 0.5, 0.2}) == SpontaneityClass::NonSpontaneous);
  CHECK(classify({0.0, 0.0, 0.0}) == SpontaneityClass::Boundary);
  CHECK(classify({-0.5, -0.5, 0.0}) == SpontaneityClass::Boundary);
  CHECK(classify({-1e-13, 1.0, 1.0 + 1e-13}) == SpontaneityClass::Boundary);
  CHECK_THROWS_AS(classify({-1.0, -1.0, 1.0}), DomainError);
  CHECK(to_string(SpontaneityClass::EnergyDriven) == "energy");
  CHECK(to_string(SpontaneityClass::NonSpontaneous) == "nonspont");
}

TEST_CASE("every consistent delta gets exactly one admissible class") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100000; ++i) {
    const double dU = u(rng), dS = u(rng);
    const StateDelta d{dU - dS, dU, dS};
    const SpontaneityClass c = classify(d);
    if (d.dF < 0.0 && d.dU > 0.0 && d.dS < 0.0) FAIL("impossible sign pattern generated");
    switch (c) {
      case SpontaneityClass::Typical: CHECK((d.dF < 0 && d.dU < 0 && d.dS > 0)); break;
      case SpontaneityClass::EnergyDriven: CHECK((d.dF < 0 && d.dS < 0)); break;
      case SpontaneityClass::EntropyDriven: CHECK((d.dF < 0 && d.dU > 0)); break;
      case SpontaneityClass::NonSpontaneous: CHECK(d.dF > 0); break;
      case SpontaneityClass::Boundary: break;
    }
  }
}

TEST_CASE("classification is invariant under positive rescaling") {
  for (const StateDelta& d : {StateDelta{-1.5, -1.0, 0.5}, StateDelta{-0.2, -0.5, -0.3},
                              StateDelta{-0.3, 0.2, 0.5}, StateDelta{0.3, 0.5, 0.2}}) {
    for (const double c : {1e-3, 0.5, 7.0, 1e4}) {
      CHECK(classify({c * d.dF, c * d.dU, c * d.dS}) == classify(d));
    }
  }
}

TEST_CASE("reversing an energy-driven process makes it non-spontaneous") {
  const TwoLevelInput ref{0.5, 3.0};
  const SpontaneityMap map = build_map(ref, {0.05, 1.0}, {0.5, 6.0}, 61);
  int checked = 0;
  for (const MapCell& cell : map.cells) {
    if (cell.label != SpontaneityClass::EnergyDriven) continue;
    const StateDelta back = delta_to({cell.Eg_tilde, cell.gap_tilde}, ref);
    CHECK(classify(back) == SpontaneityClass::NonSpontaneous);
    CHECK(classify(cell.delta.reversed()) == SpontaneityClass::NonSpontaneous);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("spontaneous-direction labels") {
  const StateDelta forward{0.3, 0.5, 0.2};
  CHECK(classify_spontaneous_direction(forward) == classify(forward.reversed()));
  const StateDelta typical{-1.5, -1.0, 0.5};
  CHECK(classify_spontaneous_direction(typical) == SpontaneityClass::Typical);
}

TEST_CASE("map cells around the reference") {
  const TwoLevelInput ref{0.5, 3.0};
  CHECK(classify(delta_to(ref, ref)) == SpontaneityClass::Boundary);
  // Narrowing the gap from 3 to 2 moves towards the peak of the excitation
  // term near 1.28, so U rises: entropy-driven, not typical.
  const StateDelta narrower = delta_to(ref, {0.5, 2.0});
  const double u_ref = 0.5 + 3.0 / (1.0 + std::exp(3.0));
  const double u_new = 0.5 + 2.0 / (1.0 + std::exp(2.0));
  CHECK(narrower.dU == doctest::Approx(u_new - u_ref).epsilon(1e-13));
  CHECK(narrower.dS > 0.0);
  CHECK(narrower.dU > 0.0);
  CHECK(narrower.dF < 0.0);
  CHECK(classify(narrower) == SpontaneityClass::EntropyDriven);
  // Lowering both coordinates keeps the process typical.
  CHECK(classify(delta_to(ref, {0.3, 2.8})) == SpontaneityClass::Typical);
  const StateDelta wider = delta_to(ref, {0.5, 4.0});
  CHECK(wider.dS < 0.0);
  CHECK(wider.dF > 0.0);
  CHECK(classify(wider) == SpontaneityClass::NonSpontaneous);
}

TEST_CASE("axes are anchored on the reference") {
  const std::vector<double> axis = make_axis({0.05, 1.0}, 241, 0.5);
  REQUIRE(axis.size() == 241);
  CHECK(std::count(axis.begin(), axis.end(), 0.5) == 1);
  for (std::size_t i = 1; i < axis.size(); ++i) CHECK(axis[i] > axis[i - 1]);
  const double step = 0.95 / 240.0;
  CHECK(std::abs(axis.front() - 0.05) < 0.5 * step + 1e-15);
  const std::vector<double> plain = make_axis({1.0, 2.0}, 3, 10.0);
  CHECK(plain == std::vector<double>{1.0, 1.5, 2.0});
  CHECK_THROWS_AS(make_axis({1.0, 1.0}, 10, 1.0), DomainError);
  CHECK_THROWS_AS(make_axis({0.0, 1.0}, 1, 0.5), DomainError);
}

TEST_CASE("full default map") {
  const TwoLevelInput ref{0.5, 3.0};
  const SpontaneityMap map = build_map(ref, {0.05, 1.0}, {0.5, 6.0}, 241);
  REQUIRE(map.cells.size() == 241u * 241u);
  std::map<SpontaneityClass, int> counts;
  int reference_cells = 0;
  for (const MapCell& cell : map.cells) {
    ++counts[cell.label];
    CHECK_FALSE((cell.delta.dF < 0.0 && cell.delta.dU > 0.0 && cell.delta.dS < 0.0));
    if (cell.Eg_tilde == 0.5 && cell.gap_tilde == 3.0) {
      ++reference_cells;
      CHECK(cell.label == SpontaneityClass::Boundary);
    }
  }
  CHECK(reference_cells == 1);
  CHECK(counts[SpontaneityClass::Typical] > 0);
  CHECK(counts[SpontaneityClass::EnergyDriven] > 0);
  CHECK(counts[SpontaneityClass::EntropyDriven] > 0);
  CHECK(counts[SpontaneityClass::NonSpontaneous] > 0);
  for (const SpontaneityClass c : {SpontaneityClass::Typical, SpontaneityClass::EnergyDriven,
                                   SpontaneityClass::EntropyDriven, SpontaneityClass::NonSpontaneous}) {
    CHECK(components(map, c) == 1);
  }
}

TEST_CASE("uniform scaling path stays typical in its spontaneous direction") {
  const TwoLevelInput ref{0.5, 3.0};
  for (int i = 0; i <= 150; ++i) {
    const double s = 0.5 + 1.5 * i / 150.0;
    const StateDelta d = delta_to(ref, {0.5 * s, 3.0 * s});
    const SpontaneityClass c = classify_spontaneous_direction(d);
    CHECK((c == SpontaneityClass::Typical || c == SpontaneityClass::Boundary));
    if (s < 1.0) CHECK(classify(d) == SpontaneityClass::Typical);
  }
}

TEST_CASE("map input validation") {
  CHECK_THROWS_AS(build_map({0.5, 3.0}, {1.0, 0.5}, {0.5, 6.0}, 10), DomainError);
  CHECK_THROWS_AS(build_map({0.5, 3.0}, {0.05, 1.0}, {-1.0, 6.0}, 10), DomainError);
  CHECK_THROWS_AS(build_map({0.5, 3.0}, {0.05, 1.0}, {0.5, 6.0}, 1), DomainError);
}

TEST_CASE("paths") {
  const std::vector<ThermoQuantities> constant(5, two_level(TwoLevelInput{0.4, 2.0}));
  for (const SpontaneityClass c : classify_path(constant, 0)) CHECK(c == SpontaneityClass::Boundary);
  for (const SpontaneityClass c : classify_path(constant, 2, PathReference::Stepwise)) {
    CHECK(c == SpontaneityClass::Boundary);
  }
  CHECK_THROWS_AS(classify_path(constant, 5), DomainError);

  std::vector<ThermoQuantities> shrinking;
  for (int i = 0; i < 6; ++i) shrinking.push_back(two_level(TwoLevelInput{0.5 - 0.05 * i, 3.0 - 0.3 * i}));
  const auto fixed = classify_path(shrinking, 0);
  CHECK(fixed[0] == SpontaneityClass::Boundary);
  for (std::size_t i = 1; i < fixed.size(); ++i) CHECK(fixed[i] == SpontaneityClass::Typical);
  const auto deltas = path_deltas(shrinking, 0, PathReference::Stepwise);
  CHECK(deltas[3].dF == doctest::Approx(shrinking[3].F_tilde - shrinking[2].F_tilde));
}

TEST_CASE("map CSV layout") {
  const SpontaneityMap map = build_map({0.5, 3.0}, {0.05, 1.0}, {0.5, 6.0}, 5);
  std::ostringstream os;
  write_map_csv(os, map);
  const std::string text = os.str();
  CHECK(text.rfind("Eg_over_kT,gap_over_kT,dF,dU,dS,class\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 26);
}
