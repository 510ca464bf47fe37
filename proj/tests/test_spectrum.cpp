#include <catch_amalgamated.hpp>

#include "toral/spectrum.hpp"

using namespace toral;

namespace {

WeightedPointSet integer_comb(double radius) {
  WeightedPointSet pts;
  pts.window_radius = radius;
  for (std::int64_t n = -static_cast<std::int64_t>(radius); n <= static_cast<std::int64_t>(radius);
       ++n)
    pts.points.push_back({static_cast<double>(n), 1});
  pts.min_gap = 1.0;
  return pts;
}

}  // namespace

TEST_CASE("windowed exponential sums of the integer comb") {
  const auto pts = integer_comb(100.0);
  // mass at frequency zero: point count per unit length
  CHECK(bohr_coefficient(pts, 0.0).real() == Catch::Approx(1.005).margin(1e-12));
  // integer frequencies resonate fully
  CHECK(std::abs(bohr_coefficient(pts, 1.0) - bohr_coefficient(pts, 0.0)) < 1e-12);
  // half-integer frequencies alternate signs and almost cancel
  CHECK(std::abs(bohr_coefficient(pts, 0.5)) < 0.01);
  // generic frequencies stay near zero
  CHECK(std::abs(bohr_coefficient(pts, std::sqrt(2.0))) < 0.05);

  WeightedPointSet empty;
  CHECK_THROWS_AS(bohr_coefficient(empty, 0.0), std::invalid_argument);
}

TEST_CASE("coefficient entries pull frequencies through the map") {
  const auto pts = integer_comb(100.0);
  const CompactificationMap map = CompactificationMap::from_tangent(std::sqrt(2.0));
  const SpectrumEntry e = kappa_hat_points(pts, map, {2, -1});
  CHECK(e.k == IntVec{2, -1});
  CHECK(e.y == Catch::Approx(map.pull_frequency(IntVec{2, -1})).margin(1e-15));
  CHECK(e.window_radius == 100.0);
  CHECK(e.error_estimate == Catch::Approx(kBohrErrorC / 100.0).margin(1e-15));
}

TEST_CASE("frequency boxes enumerate lexicographically") {
  const auto box = detail::k_box(2, 2);
  REQUIRE(box.size() == 25);
  CHECK(box.front() == IntVec{-2, -2});
  CHECK(box.back() == IntVec{2, 2});
  CHECK(std::is_sorted(box.begin(), box.end()));
  CHECK(detail::k_box(3, 1).size() == 27);
}

TEST_CASE("spectrum scan assembles an ordered table") {
  const auto pts = integer_comb(50.0);
  const CompactificationMap map(1, 1, {1.0});
  // frequencies of a 1d comb: integers resonate, everything else is noise
  const auto table = spectrum_scan(pts, map, 2, 0.5);
  CHECK(table.provenance == "bohr-mean");
  REQUIRE(table.entries.size() == 5);
  for (const auto& e : table.entries) CHECK(std::abs(e.value) > 0.9);
  CHECK(table.support_frequencies().size() == 5);
}

TEST_CASE("difference residual against a hand table") {
  const CompactificationMap map = CompactificationMap::from_tangent(std::sqrt(2.0));
  const auto p = LaurentPoly::from_terms(
      2, {{{1, 1}, {2.0, 0.0}}, {{1, 0}, {1.0, 0.0}}, {{0, 1}, {1.0, 0.0}}, {{0, 0}, {2.0, 0.0}}});

  SpectrumTable table{map, {}, 1e-8, "bohr-mean"};
  for (const auto& k : detail::k_box(2, 2)) {
    SpectrumEntry e;
    e.k = k;
    e.y = map.pull_frequency(k);
    e.value = (k == IntVec{0, 0}) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    table.entries.push_back(std::move(e));
  }
  // interior k are those with the whole stencil inside the box: [-1,2]^2
  const auto res = difference_residual(p, table);
  CHECK(res.interior_count == 16);
  // the worst interior k picks up the lone unit mass times the top coefficient
  CHECK(res.max_residual == Catch::Approx(2.0).margin(1e-15));

  SpectrumTable tiny{map, {}, 1e-8, "bohr-mean"};
  SpectrumEntry only;
  only.k = {0, 0};
  only.y = 0.0;
  tiny.entries.push_back(only);
  CHECK_THROWS_AS(difference_residual(p, tiny), std::runtime_error);
  CHECK_THROWS_AS(difference_residual(LaurentPoly::from_terms(1, {{{0}, {1.0, 0.0}}}), table),
                  std::invalid_argument);
}

TEST_CASE("table lookup by binary search") {
  const CompactificationMap map = CompactificationMap::from_tangent(std::sqrt(2.0));
  SpectrumTable table{map, {}, 1e-8, "bohr-mean"};
  for (const auto& k : detail::k_box(2, 1)) {
    SpectrumEntry e;
    e.k = k;
    table.entries.push_back(std::move(e));
  }
  CHECK(table.find(IntVec{1, 0}) != nullptr);
  CHECK(table.find(IntVec{2, 0}) == nullptr);
}
