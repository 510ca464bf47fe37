// Command-line front end: root scans, real-rootedness certification, zero
// curve tracing, density reports, coefficient tables, cut-and-project
// generation, and the bundled example verification suites. Artifacts are
// deterministic: fixed formatting, ordered assembly, and an embedded hash of
// the producing configuration.

#include <atomic>
#include <filesystem>
#include <future>
#include <iostream>

#include <CLI11.hpp>

#include "toral/angles.hpp"
#include "toral/cutproject.hpp"
#include "toral/io.hpp"
#include "toral/rootfind.hpp"
#include "toral/spectrum.hpp"
#include "toral/torus_curve.hpp"

namespace {

using namespace toral;
using nlohmann::json;

// Work is sharded across threads by index; results land in pre-sized slots
// so assembly order never depends on scheduling.
template <typename F>
void parallel_for(std::size_t count, int threads, F&& f) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futures;
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) f(i);
  };
  const int n = std::min<int>(threads, static_cast<int>(count));
  futures.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) futures.push_back(std::async(std::launch::async, worker));
  for (auto& fut : futures) fut.get();
}

struct CommonArgs {
  std::string poly_path;
  std::string map_path;
  double window = 50.0;
  int kmax = 4;
  double tol = 0.0;
  std::string out_dir = ".";
  int threads = 1;
};

CompactificationMap load_map_for(const LaurentPoly& p, const std::string& map_path) {
  if (!map_path.empty()) return io::map_from_json(io::read_json_file(map_path));
  if (p.m == 1) return CompactificationMap(1, 1, {1.0});
  throw std::invalid_argument("--map is required for multivariate polynomials");
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
  std::filesystem::create_directories(dir);
  io::write_text_file(dir + "/" + name, j.dump(2) + "\n");
}

void write_csv(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  io::write_text_file(dir + "/" + name, content);
}

json base_report(const std::string& command, const json& config) {
  return json{{"command", command}, {"config", config}, {"config_hash", io::config_hash(config)}};
}

// ---------------------------------------------------------------------------
// example definitions shared by verify-example

LaurentPoly example1_poly() {
  return LaurentPoly::from_terms(
      2, {{{1, 1}, {2.0, 0.0}}, {{1, 0}, {1.0, 0.0}}, {{0, 1}, {1.0, 0.0}}, {{0, 0}, {2.0, 0.0}}});
}

LaurentPoly example2_poly(double delta) {
  return LaurentPoly::from_terms(2, {{{1, 0}, {1.0, 0.0}},
                                     {{-1, 0}, {-1.0, 0.0}},
                                     {{0, 1}, {-delta, 0.0}},
                                     {{0, -1}, {delta, 0.0}}});
}

struct Check {
  std::string name;
  double measured;
  double budget;
  bool pass;
  std::string detail;
};

void add_check(std::vector<Check>& checks, std::string name, double measured, double budget,
               bool pass, std::string detail = "") {
  checks.push_back({std::move(name), measured, budget, pass, std::move(detail)});
}

int emit_checks(const std::vector<Check>& checks, const std::string& out_dir,
                const std::string& report_name, json report) {
  int failures = 0;
  json rows = json::array();
  for (const auto& c : checks) {
    if (!c.pass) ++failures;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": measured "
              << io::format_double(c.measured) << " vs budget " << io::format_double(c.budget);
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
    rows.push_back(json{{"name", c.name},
                        {"measured", c.measured},
                        {"budget", c.budget},
                        {"pass", c.pass},
                        {"detail", c.detail}});
  }
  report["checks"] = std::move(rows);
  report["failures"] = failures;
  write_json(out_dir, report_name, report);
  std::cout << (failures == 0 ? "all checks passed" : "FAILURES: " + std::to_string(failures))
            << "\n";
  return failures == 0 ? 0 : 2;
}

// kappa table on a k-box via line integrals, sharded across threads
SpectrumTable integral_table(const std::vector<CurveComponent>& comps,
                             const CompactificationMap& map, int kmax, double zero_threshold,
                             int threads) {
  const auto box = toral::detail::k_box(2, kmax);
  std::vector<SpectrumEntry> entries(box.size());
  parallel_for(box.size(), threads, [&](std::size_t i) {
    SpectrumEntry e;
    e.k = box[i];
    e.y = map.pull_frequency(box[i]);
    Complex acc{0.0, 0.0};
    double err = 0.0;
    for (const auto& comp : comps) {
      const auto r = toral::detail::component_integral(comp, map, box[i], {});
      acc += static_cast<double>(comp.orientation) * r.value;
      err = std::max(err, r.error_estimate);
    }
    e.value = acc;
    e.window_radius = 0.0;
    e.error_estimate = err;
    entries[i] = std::move(e);
  });
  SpectrumTable table{map, std::move(entries), zero_threshold, "line-integral"};
  return table;
}

SpectrumTable points_table(const WeightedPointSet& pts, const CompactificationMap& map, int kmax,
                           double zero_threshold, int threads) {
  const auto box = toral::detail::k_box(map.m(), kmax);
  std::vector<SpectrumEntry> entries(box.size());
  parallel_for(box.size(), threads, [&](std::size_t i) {
    entries[i] = kappa_hat_points(pts, map, box[i]);
  });
  SpectrumTable table{map, std::move(entries), zero_threshold, "bohr-mean"};
  return table;
}

// ---------------------------------------------------------------------------
// subcommand bodies

int run_roots(const CommonArgs& a) {
  const LaurentPoly p = io::poly_from_json(io::read_json_file(a.poly_path));
  const CompactificationMap map = load_map_for(p, a.map_path);
  const ExpPoly1D ep = pullback(p, map);
  RootFindOptions opts;
  if (a.tol > 0.0) opts.newton_tol = a.tol;
  const WeightedPointSet pts = real_roots(ep, -a.window, a.window, opts);

  std::ostringstream csv;
  io::write_point_set_csv(csv, pts);
  write_csv(a.out_dir, "roots.csv", csv.str());

  const json config{{"poly", io::poly_to_json(p)},
                    {"map", io::map_to_json(map)},
                    {"R", a.window},
                    {"newton_tol", opts.newton_tol}};
  json report = base_report("roots", config);
  report.update(io::point_set_sidecar(pts));
  report["empirical_density"] =
      static_cast<double>(pts.total_count()) / (2.0 * pts.window_radius);
  report["labels"] = json{{"lambda", "real root of the pulled-back exponential polynomial"},
                          {"multiplicity", "local winding count on a small disk"}};
  write_json(a.out_dir, "roots.json", report);
  std::cout << "roots: " << pts.total_count() << " on [-" << a.window << ", " << a.window
            << "], density " << io::format_double(report["empirical_density"].get<double>())
            << "\n";
  return 0;
}

int run_certify(const CommonArgs& a) {
  const LaurentPoly p = io::poly_from_json(io::read_json_file(a.poly_path));
  const CompactificationMap map = load_map_for(p, a.map_path);
  const ExpPoly1D ep = pullback(p, map);
  double window = a.window;
  if (window <= 0.0)
    window = std::max(50.0, p.terms.size() >= 2 ? 50.0 / ep.bandwidth() : 50.0);
  const RealRootedVerdict v = is_real_rooted(ep, window, a.tol);

  const json config{{"poly", io::poly_to_json(p)},
                    {"map", io::map_to_json(map)},
                    {"R", v.window_radius},
                    {"tol", v.tolerance}};
  json report = base_report("certify", config);
  report["real_rooted"] = v.real_rooted;
  report["rho_real"] = v.rho_real;
  report["rho_complex"] = v.rho_complex;
  report["R"] = v.window_radius;
  report["tolerance"] = v.tolerance;
  report["strip_height"] = v.strip_height;
  report["strip_count_agrees"] = v.strip_agrees;
  report["labels"] =
      json{{"rho_real", "real roots per unit length over the window"},
           {"rho_complex", "strip zero count per unit length (counting multiplicity)"},
           {"verdict", "densities agree within tolerance => all zeros are real"}};
  write_json(a.out_dir, "certify.json", report);
  std::cout << "certify: " << (v.real_rooted ? "real-rooted" : "NOT real-rooted") << " (rho_real "
            << io::format_double(v.rho_real) << ", rho_complex " << io::format_double(v.rho_complex)
            << ", tol " << io::format_double(v.tolerance) << ")\n";
  return v.real_rooted ? 0 : 2;
}

int run_trace(const CommonArgs& a, double step, int seed_grid) {
  const LaurentPoly p = io::poly_from_json(io::read_json_file(a.poly_path));
  const CompactificationMap map = load_map_for(p, a.map_path);
  TraceOptions opts;
  if (step > 0.0) opts.step = step;
  if (seed_grid > 0) opts.seed_grid = seed_grid;
  const auto comps = trace_components(p, map, opts);
  const HomotopyData hd = homotopy_density(comps, map);

  const json config{{"poly", io::poly_to_json(p)},
                    {"map", io::map_to_json(map)},
                    {"step", opts.step},
                    {"seed_grid", opts.seed_grid}};
  json report = base_report("trace", config);
  json comp_rows = json::array();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::ostringstream csv;
    io::write_component_csv(csv, comps[i]);
    write_csv(a.out_dir, "component_" + std::to_string(i + 1) + ".csv", csv.str());
    comp_rows.push_back(
        io::component_sidecar(comps[i], hd.components[i], transversality(comps[i], map)));
  }
  report["components"] = std::move(comp_rows);
  report["total_density"] = hd.total_density;
  report["labels"] = json{{"winding", "component class in the torus fundamental group"},
                          {"index", "projective closure index of the winding subgroup"},
                          {"E", "integer annihilator basis of the winding subgroup"},
                          {"density_contribution", "index times |det(E^T M)|"}};
  write_json(a.out_dir, "homotopy.json", report);
  std::cout << "trace: " << comps.size() << " component(s), formula density "
            << io::format_double(hd.total_density) << "\n";
  return 0;
}

int run_density(const CommonArgs& a, double step) {
  const LaurentPoly p = io::poly_from_json(io::read_json_file(a.poly_path));
  const CompactificationMap map = load_map_for(p, a.map_path);
  const ExpPoly1D ep = pullback(p, map);
  const WeightedPointSet pts = real_roots(ep, -a.window, a.window);
  const double empirical = static_cast<double>(pts.total_count()) / (2.0 * pts.window_radius);
  TraceOptions opts;
  if (step > 0.0) opts.step = step;
  const auto comps = trace_components(p, map, opts);
  const HomotopyData hd = homotopy_density(comps, map);
  const double gap = std::abs(empirical - hd.total_density) / std::max(hd.total_density, 1e-300);

  const json config{{"poly", io::poly_to_json(p)},
                    {"map", io::map_to_json(map)},
                    {"R", a.window},
                    {"step", opts.step}};
  json report = base_report("density", config);
  report["empirical_density"] = empirical;
  report["formula_density"] = hd.total_density;
  report["relative_gap"] = gap;
  json comp_rows = json::array();
  for (std::size_t i = 0; i < comps.size(); ++i)
    comp_rows.push_back(
        io::component_sidecar(comps[i], hd.components[i], transversality(comps[i], map)));
  report["components"] = std::move(comp_rows);
  report["labels"] = json{{"empirical_density", "root count / window length"},
                          {"formula_density", "sum of index times |det(E^T M)| over components"}};
  write_json(a.out_dir, "density.json", report);
  std::cout << "density: empirical " << io::format_double(empirical) << ", formula "
            << io::format_double(hd.total_density) << ", relative gap " << io::format_double(gap)
            << "\n";
  return 0;
}

int run_spectrum(const CommonArgs& a, const std::string& method) {
  const LaurentPoly p = io::poly_from_json(io::read_json_file(a.poly_path));
  const CompactificationMap map = load_map_for(p, a.map_path);
  const double zero_threshold = a.tol > 0.0 ? a.tol : 1e-8;

  const json config{{"poly", io::poly_to_json(p)},
                    {"map", io::map_to_json(map)},
                    {"R", a.window},
                    {"kmax", a.kmax},
                    {"method", method},
                    {"zero_threshold", zero_threshold}};
  json report = base_report("spectrum", config);

  std::optional<SpectrumTable> pts_table, int_table;
  if (method == "points" || method == "both") {
    const ExpPoly1D ep = pullback(p, map);
    const WeightedPointSet pts = real_roots(ep, -a.window, a.window);
    pts_table = points_table(pts, map, a.kmax, zero_threshold, a.threads);
    std::ostringstream csv;
    io::write_spectrum_csv(csv, *pts_table);
    write_csv(a.out_dir, "spectrum_points.csv", csv.str());
  }
  if (method == "integral" || method == "both") {
    const auto comps = trace_components(p, map);
    int_table = integral_table(comps, map, a.kmax, zero_threshold, a.threads);
    std::ostringstream csv;
    io::write_spectrum_csv(csv, *int_table);
    write_csv(a.out_dir, "spectrum_integral.csv", csv.str());
  }
  if (!pts_table && !int_table)
    throw std::invalid_argument("spectrum: method must be points, integral, or both");

  const SpectrumTable& primary = int_table ? *int_table : *pts_table;
  json support = json::array();
  for (const auto& k : primary.support_frequencies()) support.push_back(k);
  report["support"] = std::move(support);
  report["provenance"] = primary.provenance;
  if (pts_table && int_table) {
    double worst = 0.0;
    for (const auto& e : int_table->entries) {
      const SpectrumEntry* other = pts_table->find(e.k);
      if (other) worst = std::max(worst, std::abs(e.value - other->value));
    }
    report["cross_validation_gap"] = worst;
    std::cout << "spectrum: cross-validation gap " << io::format_double(worst) << "\n";
  }
  report["labels"] = json{{"value", "measure coefficient at the pulled-back frequency of k"},
                          {"support", "k with coefficient modulus above zero_threshold"}};
  write_json(a.out_dir, "spectrum.json", report);
  std::cout << "spectrum: " << primary.entries.size() << " entries (" << primary.provenance
            << ")\n";
  return 0;
}

int run_cutproject(const CommonArgs& a, const std::string& config_path,
                   const std::string& tan_theta, double ell) {
  CutProjectConfig cfg = [&] {
    if (!config_path.empty()) return io::cutproject_from_json(io::read_json_file(config_path));
    if (tan_theta == "golden") return CutProjectConfig::golden(ell, a.window);
    return CutProjectConfig::from_tangent(parse_angle(tan_theta).tan, ell, a.window);
  }();

  const WeightedPointSet pts = cut_project(cfg);
  std::ostringstream pcsv;
  io::write_point_set_csv(pcsv, pts);
  write_csv(a.out_dir, "cutproject_points.csv", pcsv.str());

  const CompactificationMap map = cfg.map();
  std::ostringstream ccsv;
  ccsv << "k1,k2,y,closed,bohr_re,bohr_im,gap\n";
  double worst_gap = 0.0;
  for (const auto& k : toral::detail::k_box(2, a.kmax)) {
    const double closed = kappa_coeff_closed_form(cfg, k);
    const SpectrumEntry bohr = kappa_hat_points(pts, map, k);
    const double gap = std::abs(bohr.value - Complex{closed, 0.0});
    worst_gap = std::max(worst_gap, gap);
    ccsv << k[0] << ',' << k[1] << ',' << io::format_double(bohr.y) << ','
         << io::format_double(closed) << ',' << io::format_double(bohr.value.real()) << ','
         << io::format_double(bohr.value.imag()) << ',' << io::format_double(gap) << '\n';
  }
  write_csv(a.out_dir, "cutproject_coeffs.csv", ccsv.str());

  json report = base_report("cutproject", io::cutproject_to_json(cfg));
  report["count"] = pts.total_count();
  report["empirical_density"] = static_cast<double>(pts.total_count()) / (2.0 * cfg.radius());
  report["expected_density"] = cfg.ell();
  report["coefficient_gap"] = worst_gap;
  report["diagnostics"] = pts.diagnostics;
  if (cfg.dilation()) {
    const auto dc = dilation_check(pts, cfg.dilation()->alpha, 1e-9);
    report["dilation"] = json{{"alpha", cfg.dilation()->alpha},
                              {"checked", dc.checked},
                              {"violations", dc.violations},
                              {"max_deviation", dc.max_deviation},
                              {"closed", dc.closed(1e-9)}};
  }
  report["labels"] = json{{"lambda", "strip lattice point projected onto the line"},
                          {"closed", "window transform coefficient"},
                          {"bohr", "windowed exponential-sum coefficient"}};
  write_json(a.out_dir, "cutproject.json", report);
  std::cout << "cutproject: " << pts.total_count() << " points, density "
            << io::format_double(report["empirical_density"].get<double>()) << ", coefficient gap "
            << io::format_double(worst_gap) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify-example suites (tolerances mirror the acceptance gate)

int verify_example1(const CommonArgs& a, const std::string& tan_label) {
  const AngleSpec angle = parse_angle(tan_label.empty() ? "sqrt2" : tan_label);
  const LaurentPoly p = example1_poly();
  const CompactificationMap map = CompactificationMap::from_tangent(angle.tan);
  const double expected_density = angle.cos + angle.sin;
  std::vector<Check> checks;

  const ExpPoly1D ep = pullback(p, map);
  const WeightedPointSet pts = real_roots(ep, -a.window, a.window);
  const double empirical = static_cast<double>(pts.total_count()) / (2.0 * pts.window_radius);
  add_check(checks, "empirical density vs cos+sin", std::abs(empirical / expected_density - 1.0),
            0.01, std::abs(empirical / expected_density - 1.0) < 0.01,
            "density " + io::format_double(empirical));

  const auto comps = trace_components(p, map);
  const bool one_comp = comps.size() == 1;
  bool winding_ok = false;
  if (one_comp) {
    const auto& w = comps[0].winding;
    winding_ok = (w[0] == 1 && w[1] == -1) || (w[0] == -1 && w[1] == 1);
  }
  add_check(checks, "single component with winding +-(1,-1)", one_comp && winding_ok ? 0.0 : 1.0,
            0.5, one_comp && winding_ok,
            "components " + std::to_string(comps.size()));
  const HomotopyData hd = homotopy_density(comps, map);
  add_check(checks, "formula density vs empirical", std::abs(hd.total_density / empirical - 1.0),
            0.01, std::abs(hd.total_density / empirical - 1.0) < 0.01,
            "formula " + io::format_double(hd.total_density));

  const SpectrumTable integral = integral_table(comps, map, 5, 1e-8, a.threads);
  double worst_mixed = 0.0;
  for (const auto& e : integral.entries)
    if (e.k[0] * e.k[1] < 0) worst_mixed = std::max(worst_mixed, std::abs(e.value));
  add_check(checks, "mixed-sign coefficient vanishing (|k|<=5)", worst_mixed, 1e-8,
            worst_mixed < 1e-8);
  const DifferenceResidual dr = difference_residual(p, integral);
  add_check(checks, "difference stencil residual (interior |k|<=4)", dr.max_residual, 1e-8,
            dr.max_residual < 1e-8);

  const SpectrumTable points = points_table(pts, map, 4, 1e-8, a.threads);
  double worst_cross = 0.0;
  for (const auto& e : points.entries) {
    const SpectrumEntry* other = integral.find(e.k);
    if (other) worst_cross = std::max(worst_cross, std::abs(e.value - other->value));
  }
  const double cross_budget = 5.0 / a.window + 1e-6;
  add_check(checks, "windowed vs integral coefficients (|k|<=4)", worst_cross, cross_budget,
            worst_cross <= cross_budget);

  json report = base_report("verify-example",
                            json{{"example", 1},
                                 {"tan_theta", angle.label},
                                 {"R", a.window}});
  return emit_checks(checks, a.out_dir, "verify_example_1.json", std::move(report));
}

int verify_example2(const CommonArgs& a, const std::string& tan_label, double delta) {
  const AngleSpec angle = parse_angle(tan_label.empty() ? "1/sqrt2" : tan_label);
  const LaurentPoly p = example2_poly(delta);
  const CompactificationMap map = CompactificationMap::from_tangent(angle.tan);
  std::vector<Check> checks;

  const auto comps = trace_components(p, map);
  bool windings_ok = comps.size() == 2;
  for (const auto& c : comps)
    windings_ok = windings_ok && c.winding[0] == 0 && std::llabs(c.winding[1]) == 1;
  add_check(checks, "two components each winding +-(0,1)", windings_ok ? 0.0 : 1.0, 0.5,
            windings_ok, "components " + std::to_string(comps.size()));

  const HomotopyData hd = homotopy_density(comps, map);
  const double expected_density = 2.0 * angle.cos;
  add_check(checks, "formula density vs 2cos", std::abs(hd.total_density / expected_density - 1.0),
            0.01, std::abs(hd.total_density / expected_density - 1.0) < 0.01,
            "formula " + io::format_double(hd.total_density));

  const ExpPoly1D ep = pullback(p, map);
  const WeightedPointSet pts = real_roots(ep, -a.window, a.window);
  const double empirical = static_cast<double>(pts.total_count()) / (2.0 * pts.window_radius);
  add_check(checks, "empirical density vs formula", std::abs(empirical / hd.total_density - 1.0),
            0.01, std::abs(empirical / hd.total_density - 1.0) < 0.01,
            "empirical " + io::format_double(empirical));

  const SpectrumTable integral = integral_table(comps, map, 5, 1e-8, a.threads);
  double worst_vanish = 0.0;
  for (const auto& e : integral.entries) {
    const std::int64_t k1 = e.k[0], k2 = e.k[1];
    const bool in_pattern = (k2 > -k1 && -k1 >= 1) || (k2 < -k1 && -k1 <= 0);
    if (in_pattern) worst_vanish = std::max(worst_vanish, std::abs(e.value));
  }
  add_check(checks, "vanishing pattern (|k|<=5)", worst_vanish, 1e-8, worst_vanish < 1e-8);

  const SpectrumTable points = points_table(pts, map, 4, 1e-8, a.threads);
  double worst_cross = 0.0;
  for (const auto& e : points.entries) {
    const SpectrumEntry* other = integral.find(e.k);
    if (other) worst_cross = std::max(worst_cross, std::abs(e.value - other->value));
  }
  const double cross_budget = 5.0 / a.window + 1e-6;
  add_check(checks, "windowed vs integral coefficients (|k|<=4)", worst_cross, cross_budget,
            worst_cross <= cross_budget);

  json report = base_report("verify-example",
                            json{{"example", 2},
                                 {"tan_theta", angle.label},
                                 {"delta", delta},
                                 {"R", a.window}});
  return emit_checks(checks, a.out_dir, "verify_example_2.json", std::move(report));
}

int verify_example3(const CommonArgs& a, double ell) {
  const CutProjectConfig cfg = CutProjectConfig::golden(ell, a.window);
  const WeightedPointSet pts = cut_project(cfg);
  std::vector<Check> checks;

  const double empirical = static_cast<double>(pts.total_count()) / (2.0 * cfg.radius());
  add_check(checks, "density vs window length", std::abs(empirical / cfg.ell() - 1.0), 0.02,
            std::abs(empirical / cfg.ell() - 1.0) < 0.02,
            "density " + io::format_double(empirical));

  const CompactificationMap map = cfg.map();
  double worst = 0.0;
  for (const auto& k : toral::detail::k_box(2, 4)) {
    const double closed = kappa_coeff_closed_form(cfg, k);
    const SpectrumEntry bohr = kappa_hat_points(pts, map, k);
    worst = std::max(worst, std::abs(bohr.value - Complex{closed, 0.0}));
  }
  add_check(checks, "closed-form vs windowed coefficients (|k|<=4)", worst, 0.02, worst < 0.02);

  const auto dc = dilation_check(pts, cfg.dilation()->alpha, 1e-9);
  add_check(checks, "dilation closure", dc.max_deviation, 1e-9,
            dc.closed(1e-9) && dc.checked > 0,
            "checked " + std::to_string(dc.checked) + ", violations " +
                std::to_string(dc.violations.size()));

  json report = base_report("verify-example",
                            json{{"example", 3}, {"ell", ell}, {"R", a.window}});
  return emit_checks(checks, a.out_dir, "verify_example_3.json", std::move(report));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toral: real root sets of exponential polynomials via toral compactification"};
  app.require_subcommand(1);

  CommonArgs a;
  double step = 0.0;
  int seed_grid = 0;
  std::string method = "both";
  std::string config_path;
  std::string tan_theta;
  double ell = 1.0;
  double delta = 0.5;
  int example_n = 0;

  const auto add_common = [&](CLI::App* cmd, bool needs_poly) {
    if (needs_poly) {
      cmd->add_option("--poly", a.poly_path, "Laurent polynomial JSON")->required();
      cmd->add_option("--map", a.map_path, "compactification map JSON");
    }
    cmd->add_option("--R", a.window, "window radius / enumeration radius");
    cmd->add_option("--kmax", a.kmax, "coefficient box half-width");
    cmd->add_option("--tol", a.tol, "tolerance override (command-specific)");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--threads", a.threads, "worker threads for k-grids");
  };

  auto* roots = app.add_subcommand("roots", "real roots of the pulled-back polynomial");
  add_common(roots, true);
  auto* certify = app.add_subcommand("certify", "real-rootedness certificate via root densities");
  add_common(certify, true);
  auto* trace = app.add_subcommand("trace", "trace zero-curve components on the torus");
  add_common(trace, true);
  trace->add_option("--step", step, "trace step");
  trace->add_option("--seed-grid", seed_grid, "seed mesh resolution");
  auto* density = app.add_subcommand("density", "empirical vs formula density");
  add_common(density, true);
  density->add_option("--step", step, "trace step");
  auto* spectrum = app.add_subcommand("spectrum", "measure coefficient table");
  add_common(spectrum, true);
  spectrum->add_option("--method", method, "points | integral | both");
  auto* cutproject = app.add_subcommand("cutproject", "strip-projection point set");
  add_common(cutproject, false);
  cutproject->add_option("--config", config_path, "cut-project config JSON");
  cutproject->add_option("--tan-theta", tan_theta, "line slope (sqrt2, 1/sqrt2, golden, number)");
  cutproject->add_option("--ell", ell, "window length");
  auto* verify = app.add_subcommand("verify-example", "bundled example verification suite");
  verify->add_option("example", example_n, "example number (1, 2, 3)")->required();
  add_common(verify, false);
  verify->add_option("--tan-theta", tan_theta, "slope override");
  verify->add_option("--ell", ell, "window length (example 3)");
  verify->add_option("--delta", delta, "coupling (example 2)");

  // defaults chosen per subcommand below
  a.window = 0.0;

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots->parsed()) {
      if (a.window <= 0.0) a.window = 50.0;
      return run_roots(a);
    }
    if (certify->parsed()) return run_certify(a);
    if (trace->parsed()) return run_trace(a, step, seed_grid);
    if (density->parsed()) {
      if (a.window <= 0.0) a.window = 500.0;
      return run_density(a, step);
    }
    if (spectrum->parsed()) {
      if (a.window <= 0.0) a.window = 500.0;
      return run_spectrum(a, method);
    }
    if (cutproject->parsed()) {
      if (a.window <= 0.0) a.window = 200.0;
      if (config_path.empty() && tan_theta.empty())
        throw std::invalid_argument("cutproject: provide --config or --tan-theta");
      return run_cutproject(a, config_path, tan_theta, ell);
    }
    if (verify->parsed()) {
      if (example_n == 1) {
        if (a.window <= 0.0) a.window = 500.0;
        return verify_example1(a, tan_theta);
      }
      if (example_n == 2) {
        if (a.window <= 0.0) a.window = 500.0;
        return verify_example2(a, tan_theta, delta);
      }
      if (example_n == 3) {
        if (a.window <= 0.0) a.window = 200.0;
        return verify_example3(a, ell);
      }
      throw std::invalid_argument("verify-example: example must be 1, 2, or 3");
    }
  } catch (const std::exception& e) {
    const nlohmann::json err{{"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 1;
}
