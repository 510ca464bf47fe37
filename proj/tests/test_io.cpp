#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "toral/cutproject.hpp"
#include "toral/io.hpp"

using namespace toral;
using nlohmann::json;

TEST_CASE("doubles survive a text round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double v = std::ldexp(u(rng), static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("config hashes are stable and discriminating") {
  const json a = {{"poly", "p.json"}, {"R", 500.0}};
  const json b = {{"poly", "p.json"}, {"R", 501.0}};
  CHECK(io::config_hash(a) == io::config_hash(a));
  CHECK(io::config_hash(a) != io::config_hash(b));
  CHECK(io::config_hash(a).size() == 16);
}

TEST_CASE("Laurent polynomial JSON round trip") {
  const auto p = LaurentPoly::from_terms(
      2, {{{1, 1}, {2.0, 0.0}}, {{1, 0}, {1.0, 0.5}}, {{0, -1}, {-1.0, 0.0}}});
  const auto q = io::poly_from_json(io::poly_to_json(p));
  REQUIRE(q.m == 2);
  REQUIRE(q.terms.size() == p.terms.size());
  for (const auto& [k, c] : p.terms) {
    auto it = q.terms.find(k);
    REQUIRE(it != q.terms.end());
    CHECK(it->second == c);
  }
  // imaginary part defaults to zero when omitted
  const json bare = {{"m", 1}, {"terms", {{{"exp", {2}}, {"re", 3.0}}}}};
  const auto r = io::poly_from_json(bare);
  CHECK(r.terms.at(IntVec{2}) == Complex{3.0, 0.0});
}

TEST_CASE("compactification map JSON round trip") {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  const auto back = io::map_from_json(io::map_to_json(map));
  REQUIRE(back.m() == 2);
  REQUIRE(back.n() == 1);
  CHECK(back.M(0, 0) == Catch::Approx(map.M(0, 0)).margin(1e-15));
  CHECK(back.M(1, 0) == Catch::Approx(map.M(1, 0)).margin(1e-15));
}

TEST_CASE("one-variable exponential polynomial JSON round trip") {
  const auto p = ExpPoly1D::from_terms({{0.0, {2.0, 0.0}}, {1.0, {0.0, -1.0}}, {-1.5, {1.0, 0.0}}});
  const auto q = io::exppoly_from_json(io::exppoly_to_json(p));
  REQUIRE(q.term_count() == p.term_count());
  for (std::size_t i = 0; i < p.terms().size(); ++i) {
    CHECK(q.terms()[i].freq == p.terms()[i].freq);
    CHECK(q.terms()[i].coeff == p.terms()[i].coeff);
  }
}

TEST_CASE("cut-project configuration JSON round trip") {
  const auto cfg = CutProjectConfig::golden(0.9, 120.0);
  const auto back = io::cutproject_from_json(io::cutproject_to_json(cfg));
  CHECK(back.tan_theta() == Catch::Approx(cfg.tan_theta()).margin(1e-15));
  CHECK(back.ell() == 0.9);
  CHECK(back.radius() == 120.0);
  REQUIRE(back.dilation().has_value());
  CHECK(back.dilation()->alpha == Catch::Approx(cfg.dilation()->alpha).margin(1e-15));
  CHECK(back.dilation()->matrix == cfg.dilation()->matrix);

  const json named = {{"tan_theta", "golden"}, {"ell", 1.0}, {"R", 50.0}};
  const auto g = io::cutproject_from_json(named);
  CHECK(g.dilation().has_value());

  const json plain = {{"tan_theta", std::sqrt(3.0)}, {"ell", 2.0}, {"R", 10.0}};
  CHECK_FALSE(io::cutproject_from_json(plain).dilation().has_value());
}

TEST_CASE("point set CSV layout") {
  WeightedPointSet pts;
  pts.window_radius = 5.0;
  pts.points = {{-1.25, 1}, {0.5, 2}};
  std::ostringstream os;
  io::write_point_set_csv(os, pts);
  CHECK(os.str() == "lambda,multiplicity\n-1.25,1\n0.5,2\n");
  const auto side = io::point_set_sidecar(pts);
  CHECK(side.at("count") == 3);
  CHECK(side.at("window_radius") == 5.0);
}

TEST_CASE("spectrum CSV layout") {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  SpectrumTable table{map, {}, 1e-8, "bohr-mean"};
  SpectrumEntry e;
  e.k = {1, -1};
  e.y = 0.25;
  e.value = {0.5, -0.125};
  e.window_radius = 100.0;
  e.error_estimate = 0.05;
  table.entries.push_back(e);
  std::ostringstream os;
  io::write_spectrum_csv(os, table);
  CHECK(os.str() == "k1,k2,y,re,im,R,err\n1,-1,0.25,0.5,-0.125,100,0.05\n");
}

TEST_CASE("missing JSON files raise errors") {
  CHECK_THROWS(io::read_json_file("/nonexistent/path/config.json"));
}
