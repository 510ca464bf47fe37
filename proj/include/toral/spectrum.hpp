#pragma once

// Bohr means of weighted point sets and the measure-coefficient tables they
// populate. The table abstracts over how coefficients were obtained (point
// averages or line integrals) so the difference-equation residual can be
// evaluated against either route.

#include "toral/rootfind.hpp"
#include "toral/torus_core.hpp"

namespace toral {

/// Truncation constant of the Bohr-mean error convention err = C / R.
inline constexpr double kBohrErrorC = 5.0;

/// (1 / 2R) * sum c(lambda) e^{-2 pi i y lambda} over the window [-R, R].
inline Complex bohr_coefficient(const WeightedPointSet& pts, double y) {
  if (!(pts.window_radius > 0.0))
    throw std::invalid_argument("bohr_coefficient: point set has no positive window radius");
  Complex acc{0.0, 0.0};
  for (const auto& p : pts.points)
    acc += static_cast<double>(p.multiplicity) *
           std::polar(1.0, -2.0 * std::numbers::pi * y * p.position);
  return acc / (2.0 * pts.window_radius);
}

struct SpectrumEntry {
  IntVec k;
  double y = 0.0;  // projected frequency M^T k
  Complex value{0.0, 0.0};
  double window_radius = 0.0;   // 0 for entries not produced by a window average
  double error_estimate = 0.0;
};

/// Measure coefficient at character k estimated from the point set:
/// kappa_hat(k) ~ bohr_coefficient(pts, M^T k), error kBohrErrorC / R.
inline SpectrumEntry kappa_hat_points(const WeightedPointSet& pts,
                                      const CompactificationMap& map, const IntVec& k) {
  if (map.n() != 1) throw std::invalid_argument("kappa_hat_points: map must have n = 1");
  SpectrumEntry e;
  e.k = k;
  e.y = map.pull_frequency(k);
  e.value = bohr_coefficient(pts, e.y);
  e.window_radius = pts.window_radius;
  e.error_estimate = kBohrErrorC / pts.window_radius;
  return e;
}

/// Table of measure coefficients over a box |k|_inf <= kmax, with a zero
/// threshold defining the support mask.
struct SpectrumTable {
  CompactificationMap map;
  std::vector<SpectrumEntry> entries;  // lexicographically ordered in k
  double zero_threshold = 0.0;
  std::string provenance;  // "bohr-mean" or "line-integral"

  const SpectrumEntry* find(const IntVec& k) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), k,
                               [](const SpectrumEntry& e, const IntVec& key) { return e.k < key; });
    if (it == entries.end() || it->k != k) return nullptr;
    return &*it;
  }

  bool is_null(const SpectrumEntry& e) const { return std::abs(e.value) < zero_threshold; }

  /// Sorted projected frequencies of entries above the zero threshold.
  std::vector<double> support_frequencies() const {
    std::vector<double> ys;
    for (const auto& e : entries)
      if (!is_null(e)) ys.push_back(e.y);
    std::sort(ys.begin(), ys.end());
    return ys;
  }
};

namespace detail {

inline std::vector<IntVec> k_box(int m, int kmax) {
  std::vector<IntVec> ks;
  IntVec k(m, -kmax);
  while (true) {
    ks.push_back(k);
    int pos = m - 1;
    while (pos >= 0 && k[pos] == kmax) {
      k[pos] = -kmax;
      --pos;
    }
    if (pos < 0) break;
    ++k[pos];
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

}  // namespace detail

/// Bohr-mean coefficients for every |k|_inf <= kmax.
inline SpectrumTable spectrum_scan(const WeightedPointSet& pts, const CompactificationMap& map,
                                   int kmax, double zero_threshold) {
  if (kmax < 0) throw std::invalid_argument("spectrum_scan: kmax must be >= 0");
  SpectrumTable table{map, {}, zero_threshold, "bohr-mean"};
  for (const auto& k : detail::k_box(map.m(), kmax))
    table.entries.push_back(kappa_hat_points(pts, map, k));
  return table;
}

/// Max residual of the convolution identity sum_j c_j kappa_hat(k - j) = 0
/// over every k whose full stencil lies in the table.
struct DifferenceResidual {
  double max_residual = 0.0;
  IntVec argmax;
  int interior_count = 0;
};

inline DifferenceResidual difference_residual(const LaurentPoly& p, const SpectrumTable& table) {
  if (p.m != table.map.m())
    throw std::invalid_argument("difference_residual: polynomial and table dimension differ");
  DifferenceResidual out;
  std::string missing_sample;
  for (const auto& e : table.entries) {
    Complex acc{0.0, 0.0};
    bool interior = true;
    IntVec shifted(p.m);
    for (const auto& [j, c] : p.terms) {
      for (int i = 0; i < p.m; ++i) shifted[i] = detail::checked_sub(e.k[i], j[i]);
      const SpectrumEntry* hit = table.find(shifted);
      if (hit == nullptr) {
        interior = false;
        if (missing_sample.empty()) {
          missing_sample = "(";
          for (int i = 0; i < p.m; ++i)
            missing_sample += (i ? "," : "") + std::to_string(shifted[i]);
          missing_sample += ")";
        }
        break;
      }
      acc += c * hit->value;
    }
    if (!interior) continue;
    ++out.interior_count;
    if (std::abs(acc) >= out.max_residual) {
      out.max_residual = std::abs(acc);
      out.argmax = e.k;
    }
  }
  if (out.interior_count == 0)
    throw std::runtime_error("difference_residual: no interior stencil fits the table; missing " +
                             missing_sample);
  return out;
}

}  // namespace toral
