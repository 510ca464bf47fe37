#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "toral/io.hpp"

#ifndef TORAL_CLI_PATH
#error "TORAL_CLI_PATH must point at the built CLI binary"
#endif

namespace fs = std::filesystem;
using namespace toral;

namespace {

fs::path make_workdir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "toral_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const fs::path& dir, const std::string& args) {
  const std::string cmd = std::string(TORAL_CLI_PATH) + " " + args + " >" +
                          (dir / "stdout.txt").string() + " 2>" + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int csv_data_rows(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  int rows = -1;  // skip the header
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  return rows;
}

fs::path write_unit_comb(const fs::path& dir) {
  const auto p = LaurentPoly::from_terms(1, {{{1}, {1.0, 0.0}}, {{0}, {-1.0, 0.0}}});
  const fs::path path = dir / "comb.json";
  io::write_text_file(path.string(), io::poly_to_json(p).dump());
  return path;
}

fs::path write_offset_exp(const fs::path& dir) {
  const auto p = LaurentPoly::from_terms(1, {{{1}, {1.0, 0.0}}, {{0}, {2.0, 0.0}}});
  const fs::path path = dir / "offset.json";
  io::write_text_file(path.string(), io::poly_to_json(p).dump());
  return path;
}

fs::path write_quadrant_poly(const fs::path& dir) {
  const auto p = LaurentPoly::from_terms(2, {{{1, 1}, {2.0, 0.0}},
                                             {{1, 0}, {1.0, 0.0}},
                                             {{0, 1}, {1.0, 0.0}},
                                             {{0, 0}, {2.0, 0.0}}});
  const fs::path path = dir / "quadrant.json";
  io::write_text_file(path.string(), io::poly_to_json(p).dump());
  return path;
}

fs::path write_sqrt2_map(const fs::path& dir) {
  const auto map = CompactificationMap::from_tangent(std::sqrt(2.0));
  const fs::path path = dir / "map.json";
  io::write_text_file(path.string(), io::map_to_json(map).dump());
  return path;
}

}  // namespace

TEST_CASE("cli: root extraction over a window") {
  const auto dir = make_workdir("roots");
  const auto poly = write_unit_comb(dir);
  const int rc =
      run_cli(dir, "roots --poly " + poly.string() + " --R 2.5 --out " + dir.string());
  CHECK(rc == 0);
  CHECK(csv_data_rows(dir / "roots.csv") == 5);
  const auto report = io::read_json_file((dir / "roots.json").string());
  CHECK(report.at("count") == 5);
  CHECK(report.at("empirical_density").get<double>() == Catch::Approx(1.0).margin(0.01));
  CHECK(report.contains("config_hash"));
}

TEST_CASE("cli: certification separates real-rooted from not") {
  const auto dir = make_workdir("certify");
  const auto comb = write_unit_comb(dir);
  const auto offset = write_offset_exp(dir);

  const int ok =
      run_cli(dir, "certify --poly " + comb.string() + " --R 60 --out " + (dir / "ok").string());
  CHECK(ok == 0);
  const auto good = io::read_json_file((dir / "ok" / "certify.json").string());
  CHECK(good.at("real_rooted") == true);
  CHECK(good.at("rho_real").get<double>() == Catch::Approx(1.0).margin(0.05));

  const int bad = run_cli(
      dir, "certify --poly " + offset.string() + " --R 60 --out " + (dir / "bad").string());
  CHECK(bad == 2);
  const auto report = io::read_json_file((dir / "bad" / "certify.json").string());
  CHECK(report.at("real_rooted") == false);
  CHECK(report.at("rho_real").get<double>() == 0.0);
  CHECK(report.at("rho_complex").get<double>() == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("cli: curve tracing reports homotopy data") {
  const auto dir = make_workdir("trace");
  const auto poly = write_quadrant_poly(dir);
  const auto map = write_sqrt2_map(dir);
  const int rc = run_cli(dir, "trace --poly " + poly.string() + " --map " + map.string() +
                                  " --out " + dir.string());
  CHECK(rc == 0);
  const auto report = io::read_json_file((dir / "homotopy.json").string());
  REQUIRE(report.at("components").size() == 1);
  const auto w = report.at("components")[0].at("winding");
  CHECK(std::abs(w[0].get<int>()) == 1);
  CHECK(std::abs(w[1].get<int>()) == 1);
  CHECK(w[0].get<int>() + w[1].get<int>() == 0);
  const double expected = (1.0 + std::sqrt(2.0)) / std::sqrt(3.0);
  CHECK(report.at("total_density").get<double>() == Catch::Approx(expected).margin(1e-9));
  CHECK(fs::exists(dir / "component_1.csv"));
}

TEST_CASE("cli: spectrum output is deterministic across thread counts") {
  const auto dir = make_workdir("spectrum");
  const auto poly = write_quadrant_poly(dir);
  const auto map = write_sqrt2_map(dir);
  const std::string base = "spectrum --poly " + poly.string() + " --map " + map.string() +
                           " --R 200 --kmax 2 --method both";
  const int rc1 = run_cli(dir, base + " --threads 1 --out " + (dir / "t1").string());
  const int rc4 = run_cli(dir, base + " --threads 4 --out " + (dir / "t4").string());
  CHECK(rc1 == 0);
  CHECK(rc4 == 0);
  CHECK(slurp(dir / "t1" / "spectrum_points.csv") == slurp(dir / "t4" / "spectrum_points.csv"));
  CHECK(slurp(dir / "t1" / "spectrum_integral.csv") ==
        slurp(dir / "t4" / "spectrum_integral.csv"));
  const auto report = io::read_json_file((dir / "t1" / "spectrum.json").string());
  CHECK(report.at("cross_validation_gap").get<double>() < 5.0 / 200.0 + 1e-6);
}

TEST_CASE("cli: cut-project command audits self-similarity") {
  const auto dir = make_workdir("cutproject");
  const int rc = run_cli(
      dir, "cutproject --tan-theta golden --ell 1 --R 100 --kmax 2 --out " + dir.string());
  CHECK(rc == 0);
  const auto report = io::read_json_file((dir / "cutproject.json").string());
  CHECK(report.at("dilation").at("closed") == true);
  CHECK(report.at("empirical_density").get<double>() == Catch::Approx(1.0).epsilon(0.05));
  CHECK(fs::exists(dir / "cutproject_points.csv"));
  CHECK(fs::exists(dir / "cutproject_coeffs.csv"));
}

TEST_CASE("cli: bundled verifications pass") {
  const auto dir = make_workdir("verify");
  CHECK(run_cli(dir, "verify-example 1 --out " + (dir / "e1").string()) == 0);
  CHECK(run_cli(dir, "verify-example 2 --out " + (dir / "e2").string()) == 0);
  CHECK(run_cli(dir, "verify-example 3 --out " + (dir / "e3").string()) == 0);
  const auto report = io::read_json_file((dir / "e1" / "verify_example_1.json").string());
  CHECK(report.at("failures") == 0);
}

TEST_CASE("cli: errors surface as nonzero exits") {
  const auto dir = make_workdir("errors");
  // unreadable input: computation error, JSON diagnostics on stderr
  const int rc = run_cli(dir, "roots --poly /nonexistent/poly.json --out " + dir.string());
  CHECK(rc == 1);
  CHECK(slurp(dir / "stderr.txt").find("error") != std::string::npos);
  // parse errors from the option layer
  CHECK(run_cli(dir, "roots --out " + dir.string()) != 0);
  CHECK(run_cli(dir, "no-such-command") != 0);
}
