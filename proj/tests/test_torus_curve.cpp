#include <catch_amalgamated.hpp>

#include <random>

#include "toral/torus_curve.hpp"

#include "oracles.hpp"

using namespace toral;

namespace {

LaurentPoly example1() {
  return LaurentPoly::from_terms(
      2, {{{1, 1}, {2.0, 0.0}}, {{1, 0}, {1.0, 0.0}}, {{0, 1}, {1.0, 0.0}}, {{0, 0}, {2.0, 0.0}}});
}

LaurentPoly example2(double delta) {
  return LaurentPoly::from_terms(2, {{{1, 0}, {1.0, 0.0}},
                                     {{-1, 0}, {-1.0, 0.0}},
                                     {{0, 1}, {-delta, 0.0}},
                                     {{0, -1}, {delta, 0.0}}});
}

// islands around (1/2, 1/2): 2 cos + 2 cos + 3 dips below zero there
LaurentPoly island_poly() {
  return LaurentPoly::from_terms(2, {{{1, 0}, {1.0, 0.0}},
                                     {{-1, 0}, {1.0, 0.0}},
                                     {{0, 1}, {1.0, 0.0}},
                                     {{0, -1}, {1.0, 0.0}},
                                     {{0, 0}, {3.0, 0.0}}});
}

}  // namespace

TEST_CASE("real form matches the hand expansion up to a global sign") {
  const RealForm rf(example1());
  CHECK(rf.shift() == IntVec{1, 1});
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double probe = rf.value(0.1, 0.2) / oracles::example1_surface_form(0.1, 0.2);
  const double sign = probe > 0.0 ? 1.0 : -1.0;
  for (int i = 0; i < 200; ++i) {
    const double t1 = unit(rng), t2 = unit(rng);
    CHECK(rf.value(t1, t2) ==
          Catch::Approx(sign * oracles::example1_surface_form(t1, t2)).margin(1e-11));
  }
}

TEST_CASE("real form gradient agrees with finite differences") {
  const RealForm rf(example2(0.5));
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double t1 = unit(rng), t2 = unit(rng);
    const double h = 1e-6;
    const auto g = rf.gradient(t1, t2);
    CHECK(g[0] == Catch::Approx((rf.value(t1 + h, t2) - rf.value(t1 - h, t2)) / (2 * h))
                      .margin(1e-7));
    CHECK(g[1] == Catch::Approx((rf.value(t1, t2 + h) - rf.value(t1, t2 - h)) / (2 * h))
                      .margin(1e-7));
  }
}

TEST_CASE("real form rejects polynomials without duality") {
  const auto broken = LaurentPoly::from_terms(
      2, {{{1, 1}, {2.0, 0.0}}, {{1, 0}, {1.0, 0.0}}, {{0, 1}, {1.5, 0.0}}, {{0, 0}, {2.0, 0.0}}});
  CHECK_THROWS_AS(RealForm(broken), std::domain_error);
}

TEST_CASE("first example traces one diagonal component") {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  const auto comps = trace_components(example1(), map);
  REQUIRE(comps.size() == 1);
  const auto& c = comps[0];
  const bool plus = c.winding[0] == 1 && c.winding[1] == -1;
  const bool minus = c.winding[0] == -1 && c.winding[1] == 1;
  CHECK((plus || minus));

  SECTION("winding integrality") {
    CHECK(std::abs(c.lift_displacement[0] - static_cast<double>(c.winding[0])) < 0.01);
    CHECK(std::abs(c.lift_displacement[1] - static_cast<double>(c.winding[1])) < 0.01);
  }
  SECTION("samples lie on the zero set, wrapped to the unit square") {
    const RealForm rf(example1());
    for (std::size_t i = 0; i < c.samples.size(); i += 7) {
      const auto& s = c.samples[i];
      CHECK(s[0] >= 0.0);
      CHECK(s[0] < 1.0);
      CHECK(s[1] >= 0.0);
      CHECK(s[1] < 1.0);
      CHECK(std::abs(rf.value(s[0], s[1])) < 1e-9);
    }
  }
  SECTION("the loop closes") {
    CHECK(toral::detail::torus_dist(c.samples.front(), c.samples.back()) < 1e-9);
  }
  SECTION("transversality stays away from zero for the slope-sqrt2 flow") {
    const double margin = transversality(c, map);
    CHECK(margin > 0.7);
    CHECK(margin < 0.9);
  }
}

TEST_CASE("transversality degrades when the flow parallels the curve") {
  // slope -1 runs parallel to the diagonal component somewhere
  const auto parallel = CompactificationMap::from_tangent(-1.0);
  const auto comps = trace_components(example1(), parallel);
  REQUIRE(comps.size() == 1);
  CHECK(transversality(comps[0], parallel) < 0.05);
}

TEST_CASE("second example traces two vertical components") {
  const auto map = CompactificationMap::from_tangent(1.0 / std::sqrt(2.0));
  const auto comps = trace_components(example2(0.5), map);
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) {
    CHECK(c.winding[0] == 0);
    CHECK(std::llabs(c.winding[1]) == 1);
  }
}

TEST_CASE("homotopy density formula") {
  SECTION("first example: cos + sin") {
    const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
    const auto comps = trace_components(example1(), map);
    const auto hd = homotopy_density(comps, map);
    REQUIRE(hd.components.size() == 1);
    CHECK(hd.components[0].index == 1);
    REQUIRE(hd.components[0].annihilator.size() == 1);
    const auto& e = hd.components[0].annihilator[0];
    CHECK(e[0] * comps[0].winding[0] + e[1] * comps[0].winding[1] == 0);
    const double expected = (1.0 + std::sqrt(2.0)) / std::sqrt(3.0);
    CHECK(hd.total_density == Catch::Approx(expected).epsilon(1e-12));
  }
  SECTION("second example: 2 cos") {
    const auto map = CompactificationMap::from_tangent(1.0 / std::sqrt(2.0));
    const auto comps = trace_components(example2(0.5), map);
    const auto hd = homotopy_density(comps, map);
    const double expected = 2.0 * std::sqrt(2.0 / 3.0);
    CHECK(hd.total_density == Catch::Approx(expected).epsilon(1e-12));
  }
  SECTION("null-homotopic components have no formula") {
    const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
    const auto comps = trace_components(island_poly(), map);
    REQUIRE_FALSE(comps.empty());
    CHECK(comps[0].winding[0] == 0);
    CHECK(comps[0].winding[1] == 0);
    CHECK_THROWS_AS(homotopy_density(comps, map), std::domain_error);
  }
}

TEST_CASE("zero-free polynomials trace no components") {
  const auto p = LaurentPoly::from_terms(
      2, {{{1, 0}, {1.0, 0.0}}, {{-1, 0}, {1.0, 0.0}}, {{0, 0}, {4.0, 0.0}}});
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  CHECK(trace_components(p, map).empty());
}

TEST_CASE("coefficient integrals") {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  const auto comps = trace_components(example1(), map);

  SECTION("mass equals the density") {
    const auto hd = homotopy_density(comps, map);
    const Complex mass = kappa_hat_integral(comps, map, {0, 0});
    CHECK(mass.real() == Catch::Approx(hd.total_density).epsilon(1e-10));
    CHECK(std::abs(mass.imag()) < 1e-12);
  }
  SECTION("conjugate symmetry of a real measure") {
    for (const IntVec k : {IntVec{1, 1}, IntVec{2, 1}, IntVec{0, 3}}) {
      const IntVec neg{-k[0], -k[1]};
      const Complex a = kappa_hat_integral(comps, map, k);
      const Complex b = kappa_hat_integral(comps, map, neg);
      CHECK(std::abs(b - std::conj(a)) < 1e-10);
    }
  }
  SECTION("mixed-sign vanishing, tighter than the shipped budget") {
    for (const IntVec k : {IntVec{1, -1}, IntVec{-2, 3}, IntVec{4, -1}}) {
      CHECK(std::abs(kappa_hat_integral(comps, map, k)) < 1e-10);
    }
  }
  SECTION("table assembly and lookup") {
    const auto table = kappa_table_from_curve(comps, map, 2, 1e-8);
    CHECK(table.provenance == "line-integral");
    CHECK(table.entries.size() == 25);
    const SpectrumEntry* e = table.find(IntVec{0, 0});
    REQUIRE(e != nullptr);
    CHECK(e->value.real() == Catch::Approx(kappa_hat_integral(comps, map, {0, 0}).real()));
    CHECK(std::is_sorted(table.entries.begin(), table.entries.end(),
                         [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.k < b.k; }));
  }
  SECTION("difference stencil residual is tiny with exact integrals") {
    const auto table = kappa_table_from_curve(comps, map, 3, 1e-8);
    const auto res = difference_residual(example1(), table);
    CHECK(res.max_residual < 1e-10);
    CHECK(res.interior_count > 0);
  }
}

TEST_CASE("trace refinement leaves the coefficients unchanged") {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  TraceOptions coarse, fine;
  coarse.step = 1e-3;
  fine.step = 5e-4;
  const auto c1 = trace_components(example1(), map, coarse);
  const auto c2 = trace_components(example1(), map, fine);
  for (const IntVec k : {IntVec{0, 0}, IntVec{1, 1}, IntVec{2, 3}, IntVec{1, -2}}) {
    const Complex a = kappa_hat_integral(c1, map, k);
    const Complex b = kappa_hat_integral(c2, map, k);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("island components integrate through the polyline fallback") {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  const auto comps = trace_components(island_poly(), map);
  REQUIRE_FALSE(comps.empty());
  // a contractible loop carries zero net mass against the conormal form
  const Complex mass = kappa_hat_integral(comps, map, {0, 0});
  CHECK(std::abs(mass) < 1e-9);
  // and the integral at nonzero k still converges
  const Complex v = kappa_hat_integral(comps, map, {1, 0});
  CHECK(std::isfinite(v.real()));
  CHECK(std::isfinite(v.imag()));
}

TEST_CASE("trace rejects bad steps") {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  TraceOptions opts;
  opts.step = 0.0;
  CHECK_THROWS_AS(trace_components(example1(), map, opts), std::invalid_argument);
  opts.step = 0.5;
  CHECK_THROWS_AS(trace_components(example1(), map, opts), std::invalid_argument);
}
