#include <cmath>
#include <string>

#include "doctest.h"
#include "shapeq/potentials.hpp"

using namespace shapeq;

namespace {

PotentialSpec box_bump(double l, double h = 0.057, double w = 1.0) {
  return PotentialSpec{InfiniteWellGaussianBump{100.0, l, h, w}};
}

PotentialSpec harmonic_bump(double l, double h = 0.057, double w = 1.0) {
  return PotentialSpec{HarmonicGaussianBump{100.0, 15.0, l, h, w}};
}

bool contains(const std::vector<std::string>& messages, const std::string& text) {
  for (const auto& m : messages) {
    if (m.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("pointwise values") {
  CHECK(evaluate(PotentialSpec{InfiniteWell{100.0}}, 37.0) == 0.0);
  CHECK(evaluate(box_bump(60.0), 60.0) == doctest::Approx(0.057).epsilon(1e-15));
  CHECK(evaluate(harmonic_bump(90.0), 50.0) == doctest::Approx(0.057 * std::exp(-800.0)));
  CHECK(evaluate(harmonic_bump(90.0), 50.0) < 1e-300);

  const PotentialSpec harmonic{Harmonic{10.0, 100.0, 50.0}};
  const double kc = kinetic_coefficient(0.067);
  CHECK(evaluate(harmonic, 50.0) == 0.0);
  CHECK(evaluate(harmonic, 60.0) == doctest::Approx(kc / 1e4 * 100.0).epsilon(1e-14));
}

TEST_CASE("evaluate rejects out-of-domain requests") {
  CHECK_THROWS_AS(evaluate(PotentialSpec{InfiniteWell{100.0}}, -0.1), DomainError);
  CHECK_THROWS_AS(evaluate(PotentialSpec{InfiniteWell{100.0}}, 100.1), DomainError);
  CHECK_NOTHROW(evaluate(PotentialSpec{InfiniteWell{100.0}}, 100.0));
  CHECK_THROWS_AS(evaluate(PotentialSpec{InfiniteWellInfinitePartition{100.0, 40.0}}, 10.0),
                  DomainError);
  CHECK_THROWS_AS(evaluate(box_bump(50.0, 0.057, -1.0), 10.0), DomainError);
}

TEST_CASE("validation messages") {
  CHECK(validate(box_bump(50.0)).empty());
  CHECK(contains(validate(box_bump(0.0)), "l must lie strictly inside (0, L)"));
  CHECK(contains(validate(box_bump(100.0)), "l must lie strictly inside (0, L)"));
  CHECK(contains(validate(box_bump(50.0, 0.057, -1.0)), "w must be positive"));
  CHECK(contains(validate(box_bump(50.0, -0.1)), "h must be non-negative"));
  CHECK(validate(box_bump(0.0, 0.057, -1.0)).size() == 2);
  CHECK_FALSE(validate(PotentialSpec{InfiniteWell{-1.0}}).empty());
  CHECK_FALSE(validate(PotentialSpec{InfiniteWell{100.0}, 0.0}).empty());
  CHECK_FALSE(validate(PotentialSpec{Harmonic{0.0, 100.0, 50.0}}).empty());
  CHECK_FALSE(validate(PotentialSpec{InfiniteWellInfinitePartition{100.0, 100.0}}).empty());
  CHECK_THROWS_AS(require_valid(box_bump(0.0)), DomainError);
}

TEST_CASE("mirror reflects the partition") {
  CHECK(*shape_parameter(mirror(box_bump(60.0))) == 40.0);
  CHECK(*shape_parameter(mirror(box_bump(50.0))) == 50.0);
  for (const double l : {12.5, 50.0, 73.0}) {
    const PotentialSpec spec = harmonic_bump(l);
    CHECK(describe(mirror(mirror(spec))) == describe(spec));
    const PotentialSpec split{InfiniteWellInfinitePartition{100.0, l}};
    CHECK(describe(mirror(mirror(split))) == describe(split));
  }
}

TEST_CASE("mirror symmetry of the pointwise potential") {
  for (const PotentialSpec& spec :
       {box_bump(63.0), harmonic_bump(71.0, 0.02, 2.5), PotentialSpec{Harmonic{10.0, 100.0, 50.0}},
        PotentialSpec{InfiniteWell{80.0}}}) {
    const PotentialSpec m = mirror(spec);
    const double L = domain_length(spec);
    for (int i = 0; i <= 400; ++i) {
      const double x = L * i / 400.0;
      CHECK(evaluate(m, L - x) == doctest::Approx(evaluate(spec, x)).epsilon(1e-12).scale(1e-15));
    }
  }
}

TEST_CASE("bump variants are continuous in x and l") {
  for (const double l : {30.0, 50.0, 87.0}) {
    for (const PotentialSpec& spec : {box_bump(l), harmonic_bump(l)}) {
      double previous = evaluate(spec, 0.0);
      for (int i = 1; i <= 100000; ++i) {
        const double x = 100.0 * i / 100000.0;
        const double v = evaluate(spec, x);
        // Largest slope of the bump is h / (w sqrt(e)); the parabola adds less.
        CHECK(std::abs(v - previous) <= 0.05 * 1e-3 + 1e-12);
        previous = v;
      }
    }
  }
  const double x = 48.7;
  for (int i = 0; i < 1000; ++i) {
    const double l = 40.0 + i * 0.02;
    CHECK(std::abs(evaluate(box_bump(l + 1e-6), x) - evaluate(box_bump(l), x)) < 1e-7);
  }
}

TEST_CASE("h = 0 removes the partition exactly") {
  const PotentialSpec flat{InfiniteWell{100.0}};
  const PotentialSpec parabola{Harmonic{15.0, 100.0, 50.0}};
  for (int i = 0; i <= 1000; ++i) {
    const double x = 0.1 * i;
    CHECK(evaluate(box_bump(33.0, 0.0), x) == evaluate(flat, x));
    CHECK(evaluate(harmonic_bump(33.0, 0.0), x) == evaluate(parabola, x));
  }
}

TEST_CASE("size rescaling conventions") {
  const PotentialSpec spec = box_bump(60.0, 0.057, 1.0);
  const auto& frac = std::get<InfiniteWellGaussianBump>(
      with_size(spec, 200.0, ShapeConvention::FixedFraction).geometry);
  CHECK(frac.L == 200.0);
  CHECK(frac.l == doctest::Approx(120.0));
  CHECK(frac.w == 1.0);
  CHECK(frac.h == 0.057);
  const auto& abs = std::get<InfiniteWellGaussianBump>(
      with_size(spec, 200.0, ShapeConvention::FixedAbsolute).geometry);
  CHECK(abs.l == 60.0);

  const PotentialSpec trap{Harmonic{10.0, 200.0, 100.0}};
  CHECK(size_parameter(trap) == 10.0);
  const auto& scaled = std::get<Harmonic>(with_size(trap, 20.0).geometry);
  CHECK(scaled.L_osc == 20.0);
  CHECK(scaled.L_domain == doctest::Approx(400.0));
  CHECK(scaled.center == doctest::Approx(200.0));
  CHECK(size_parameter(spec) == 100.0);
}

TEST_CASE("canonical description and hash") {
  const PotentialSpec a = box_bump(60.0);
  const PotentialSpec b = box_bump(60.000000000001);
  CHECK(type_name(a) == "box_bump");
  CHECK(type_name(PotentialSpec{InfiniteWellInfinitePartition{}}) == "infinite_partition");
  CHECK(spec_hash(a) == spec_hash(box_bump(60.0)));
  CHECK(spec_hash(a) != spec_hash(b));
  CHECK(spec_hash(a).size() == 16);
  CHECK(is_split_domain(PotentialSpec{InfiniteWellInfinitePartition{}}));
  CHECK_FALSE(is_split_domain(a));
  CHECK_FALSE(shape_parameter(PotentialSpec{InfiniteWell{}}).has_value());
  CHECK_THROWS_AS(with_shape_parameter(PotentialSpec{InfiniteWell{}}, 3.0), DomainError);
}
