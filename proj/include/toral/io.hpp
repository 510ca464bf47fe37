#pragma once

// Serialization: JSON descriptions of maps, polynomials, and cut-and-project
// configurations; CSV emission for point sets, curve samples, and
// coefficient tables. All floating-point output goes through one
// shortest-round-trip formatter so artifacts are bit-stable across runs.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "toral/angles.hpp"
#include "toral/cutproject.hpp"
#include "toral/spectrum.hpp"
#include "toral/torus_curve.hpp"

namespace toral::io {

using nlohmann::json;

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// FNV-1a over a canonical string; used to stamp artifacts with the
/// configuration that produced them.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string config_hash(const json& j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

// ---------------------------------------------------------------------------
// JSON descriptions

inline json map_to_json(const CompactificationMap& map) {
  json m = json::array();
  for (int i = 0; i < map.m(); ++i)
    for (int j = 0; j < map.n(); ++j) m.push_back(map.M(i, j));
  return json{{"m", map.m()}, {"n", map.n()}, {"M", std::move(m)}};
}

inline CompactificationMap map_from_json(const json& j) {
  const int m = j.at("m").get<int>();
  const int n = j.at("n").get<int>();
  std::vector<double> data = j.at("M").get<std::vector<double>>();
  return CompactificationMap(m, n, std::move(data));
}

inline json poly_to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms)
    terms.push_back(json{{"exp", k}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"m", p.m}, {"terms", std::move(terms)}};
}

inline LaurentPoly poly_from_json(const json& j) {
  const int m = j.at("m").get<int>();
  std::vector<std::pair<IntVec, Complex>> terms;
  for (const auto& t : j.at("terms")) {
    IntVec k = t.at("exp").get<IntVec>();
    const double re = t.at("re").get<double>();
    const double im = t.value("im", 0.0);
    terms.emplace_back(std::move(k), Complex{re, im});
  }
  return LaurentPoly::from_terms(m, terms);
}

inline json exppoly_to_json(const ExpPoly1D& p) {
  json terms = json::array();
  for (const auto& t : p.terms())
    terms.push_back(json{{"freq", t.freq}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  return json{{"terms", std::move(terms)}};
}

inline ExpPoly1D exppoly_from_json(const json& j) {
  std::vector<ExpPoly1D::Term> terms;
  for (const auto& t : j.at("terms"))
    terms.push_back({t.at("freq").get<double>(),
                     Complex{t.at("re").get<double>(), t.value("im", 0.0)}});
  return ExpPoly1D::from_terms(std::move(terms));
}

inline CutProjectConfig cutproject_from_json(const json& j) {
  const double ell = j.at("ell").get<double>();
  const double radius = j.at("R").get<double>();
  const auto& tt = j.at("tan_theta");
  if (tt.is_string()) {
    const std::string label = tt.get<std::string>();
    if (label == "golden") return CutProjectConfig::golden(ell, radius);
    return CutProjectConfig::from_tangent(parse_angle(label).tan, ell, radius);
  }
  std::optional<DilationData> dil;
  if (j.contains("dilation")) {
    DilationData d;
    d.alpha = j.at("dilation").at("alpha").get<double>();
    const auto mat = j.at("dilation").at("matrix").get<std::vector<std::int64_t>>();
    if (mat.size() != 4)
      throw std::invalid_argument("cut-project config: dilation matrix must have 4 entries");
    std::copy(mat.begin(), mat.end(), d.matrix.begin());
    dil = d;
  }
  return CutProjectConfig::from_tangent(tt.get<double>(), ell, radius, dil);
}

inline json cutproject_to_json(const CutProjectConfig& cfg) {
  json j{{"tan_theta", cfg.tan_theta()}, {"ell", cfg.ell()}, {"R", cfg.radius()}};
  if (cfg.dilation()) {
    j["dilation"] = json{{"alpha", cfg.dilation()->alpha},
                         {"matrix", std::vector<std::int64_t>(cfg.dilation()->matrix.begin(),
                                                              cfg.dilation()->matrix.end())}};
  }
  return j;
}

// ---------------------------------------------------------------------------
// CSV artifacts

inline void write_point_set_csv(std::ostream& os, const WeightedPointSet& pts) {
  os << "lambda,multiplicity\n";
  for (const auto& p : pts.points)
    os << format_double(p.position) << ',' << p.multiplicity << '\n';
}

inline json point_set_sidecar(const WeightedPointSet& pts) {
  return json{{"window_radius", pts.window_radius},
              {"count", pts.total_count()},
              {"min_gap", pts.min_gap},
              {"diagnostics", pts.diagnostics}};
}

inline void write_component_csv(std::ostream& os, const CurveComponent& comp) {
  os << "theta1,theta2\n";
  for (const auto& s : comp.samples)
    os << format_double(s[0]) << ',' << format_double(s[1]) << '\n';
}

inline json component_sidecar(const CurveComponent& comp, const ComponentHomotopy& h,
                              double transversality_margin) {
  json e = json::array();
  for (const auto& col : h.annihilator) e.push_back(col);
  return json{{"winding", {comp.winding[0], comp.winding[1]}},
              {"orientation", comp.orientation},
              {"index", h.index},
              {"E", std::move(e)},
              {"density_contribution", h.density_contribution},
              {"transversality_margin", transversality_margin},
              {"trace_step", comp.trace_step}};
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumTable& table) {
  os << "k1,k2,y,re,im,R,err\n";
  for (const auto& e : table.entries) {
    for (std::size_t i = 0; i < e.k.size(); ++i) os << e.k[i] << ',';
    os << format_double(e.y) << ',' << format_double(e.value.real()) << ','
       << format_double(e.value.imag()) << ',' << format_double(e.window_radius) << ','
       << format_double(e.error_estimate) << '\n';
  }
}

// ---------------------------------------------------------------------------
// files

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace toral::io
