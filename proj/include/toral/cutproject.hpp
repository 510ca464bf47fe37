#pragma once

// Cut-and-project sets from a strip around an irrational line through the
// unit planar lattice: banded enumeration of the strip, the closed-form
// measure coefficients (window Fourier transform), and the self-similarity
// check for configurations carrying an integer dilation matrix.

#include "toral/rootfind.hpp"
#include "toral/torus_core.hpp"

#include <optional>

namespace toral {

/// Integer matrix A with |det A| = 1 whose transpose scales the line
/// direction by alpha and the internal direction by det(A)/alpha. Multiplying
/// point positions by alpha then maps the point set into itself.
struct DilationData {
  double alpha = 1.0;
  std::array<std::int64_t, 4> matrix{1, 0, 0, 1};  // row-major 2x2
};

class CutProjectConfig {
 public:
  /// Line direction (cos, sin) from its tangent; requires irrational tangent
  /// (screened through the compactification machinery), window length ell,
  /// and enumeration radius along the line.
  static CutProjectConfig from_tangent(double tan_theta, double ell, double radius,
                                       std::optional<DilationData> dilation = std::nullopt) {
    if (!(ell > 0.0)) throw std::invalid_argument("cut-project: window length must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("cut-project: radius must be positive");
    CutProjectConfig cfg;
    cfg.tan_ = tan_theta;
    cfg.cos_ = 1.0 / std::hypot(1.0, tan_theta);
    cfg.sin_ = tan_theta * cfg.cos_;
    cfg.ell_ = ell;
    cfg.radius_ = radius;
    const CompactificationMap map = CompactificationMap::from_tangent(tan_theta);
    if (!map.independence().independent)
      throw std::domain_error("cut-project: slope is rational (or indistinguishable from it)");
    if (dilation) {
      cfg.validate_dilation(*dilation);
      cfg.dilation_ = dilation;
    }
    return cfg;
  }

  /// Golden-slope configuration: tangent (1+sqrt 5)/2 with its exact
  /// self-similarity under [[0,1],[1,1]].
  static CutProjectConfig golden(double ell, double radius) {
    const double alpha = 0.5 * (1.0 + std::sqrt(5.0));
    return from_tangent(alpha, ell, radius, DilationData{alpha, {0, 1, 1, 1}});
  }

  double cos_theta() const { return cos_; }
  double sin_theta() const { return sin_; }
  double tan_theta() const { return tan_; }
  double ell() const { return ell_; }
  double radius() const { return radius_; }
  const std::optional<DilationData>& dilation() const { return dilation_; }

  /// The compactification map pairing with this configuration (frequencies
  /// of the projected set live on its pulled-back lattice).
  CompactificationMap map() const { return CompactificationMap::from_tangent(tan_); }

 private:
  void validate_dilation(const DilationData& d) const {
    const auto& a = d.matrix;
    const std::int64_t det = detail::checked_sub(detail::checked_mul(a[0], a[3]),
                                                 detail::checked_mul(a[1], a[2]));
    if (det != 1 && det != -1)
      throw std::invalid_argument("cut-project: dilation matrix must be unimodular");
    // A^T must scale the direction by alpha and the internal normal by det/alpha
    const double d1 = cos_, d2 = sin_;
    const double atd1 = static_cast<double>(a[0]) * d1 + static_cast<double>(a[2]) * d2;
    const double atd2 = static_cast<double>(a[1]) * d1 + static_cast<double>(a[3]) * d2;
    if (std::abs(atd1 - d.alpha * d1) > 1e-10 || std::abs(atd2 - d.alpha * d2) > 1e-10)
      throw std::invalid_argument("cut-project: dilation does not scale the line direction");
    const double n1 = -sin_, n2 = cos_;
    const double beta = static_cast<double>(det) / d.alpha;
    const double atn1 = static_cast<double>(a[0]) * n1 + static_cast<double>(a[2]) * n2;
    const double atn2 = static_cast<double>(a[1]) * n1 + static_cast<double>(a[3]) * n2;
    if (std::abs(atn1 - beta * n1) > 1e-10 || std::abs(atn2 - beta * n2) > 1e-10)
      throw std::invalid_argument("cut-project: dilation does not scale the internal direction");
  }

  double cos_ = 1.0, sin_ = 0.0, tan_ = 0.0;
  double ell_ = 1.0;
  double radius_ = 1.0;
  std::optional<DilationData> dilation_;
};

/// Enumerates the projected positions p1 cos + p2 sin of lattice points in
/// the open strip |-p1 sin + p2 cos| < ell/2, restricted to |position| <=
/// radius. Lattice points within 1e-12 of the strip boundary are excluded
/// and counted in the diagnostics.
inline WeightedPointSet cut_project(const CutProjectConfig& cfg) {
  const double c = cfg.cos_theta(), s = cfg.sin_theta();
  const double half = 0.5 * cfg.ell();
  const double r = cfg.radius();
  constexpr double kBoundaryGuard = 1e-12;

  WeightedPointSet out;
  out.window_radius = r;
  std::vector<std::pair<double, std::int64_t>> hits;  // (position, lattice p1) before merging
  std::size_t boundary = 0;

  // p = t (c, s) + u (-s, c), |t| <= r, |u| <= half bounds both coordinates
  const double p1_span = r * std::abs(c) + half * std::abs(s);
  const auto p1_lo = static_cast<std::int64_t>(std::floor(-p1_span));
  const auto p1_hi = static_cast<std::int64_t>(std::ceil(p1_span));
  for (std::int64_t p1 = p1_lo; p1 <= p1_hi; ++p1) {
    // strip: (p1 s - half) / c < p2 < (p1 s + half) / c    (c > 0)
    // radius: (-r - p1 c) / s <= p2 <= (r - p1 c) / s       (when s != 0)
    const double fp1 = static_cast<double>(p1);
    double lo = (fp1 * s - half) / c;
    double hi = (fp1 * s + half) / c;
    if (s > 0.0) {
      lo = std::max(lo, (-r - fp1 * c) / s);
      hi = std::min(hi, (r - fp1 * c) / s);
    } else if (s < 0.0) {
      lo = std::max(lo, (r - fp1 * c) / s);
      hi = std::min(hi, (-r - fp1 * c) / s);
    }
    for (auto p2 = static_cast<std::int64_t>(std::ceil(lo - 1e-9));
         p2 <= static_cast<std::int64_t>(std::floor(hi + 1e-9)); ++p2) {
      const double fp2 = static_cast<double>(p2);
      const double u = -fp1 * s + fp2 * c;
      if (std::abs(std::abs(u) - half) < kBoundaryGuard) {
        ++boundary;
        continue;
      }
      if (std::abs(u) >= half) continue;
      const double t = fp1 * c + fp2 * s;
      if (std::abs(t) > r) continue;
      hits.emplace_back(t, p1);
    }
  }
  std::sort(hits.begin(), hits.end());

  bool coincidence = false;
  for (const auto& [t, p1] : hits) {
    if (!out.points.empty() && std::abs(t - out.points.back().position) < 1e-12) {
      out.points.back().multiplicity += 1;
      coincidence = true;
      continue;
    }
    if (!out.points.empty())
      out.min_gap = std::min(out.min_gap, t - out.points.back().position);
    out.points.push_back({t, 1});
  }
  if (boundary > 0)
    out.diagnostics.push_back("excluded " + std::to_string(boundary) +
                              " lattice points within 1e-12 of the strip boundary");
  if (coincidence)
    out.diagnostics.push_back("merged coincident projections (unexpected for irrational slope)");
  return out;
}

/// Closed-form measure coefficient at the pulled-back frequency of k:
/// the window indicator transform ell sinc(pi ell (-k1 sin + k2 cos)).
inline double kappa_coeff_closed_form(const CutProjectConfig& cfg, const IntVec& k) {
  if (k.size() != 2) throw std::invalid_argument("kappa_coeff_closed_form: k must be a 2-vector");
  const double x = std::numbers::pi * cfg.ell() *
                   (-static_cast<double>(k[0]) * cfg.sin_theta() +
                    static_cast<double>(k[1]) * cfg.cos_theta());
  if (std::abs(x) < 1e-8) return cfg.ell() * (1.0 - x * x / 6.0);
  return cfg.ell() * std::sin(x) / x;
}

/// Self-similarity audit: every point position lambda with |alpha lambda|
/// inside the window (shrunk by margin) must have alpha lambda in the set
/// within tol. Multiplicities must not decrease.
struct DilationCheckResult {
  std::size_t checked = 0;
  std::vector<double> violations;  // positions lambda whose image is missing
  double max_deviation = 0.0;      // worst |alpha lambda - nearest point|
  bool closed(double tol) const { return violations.empty() && max_deviation <= tol; }
};

inline DilationCheckResult dilation_check(const WeightedPointSet& pts, double alpha,
                                          double tol = 1e-9, double margin = 1.0) {
  if (pts.window_radius <= 0.0)
    throw std::invalid_argument("dilation_check: point set has no window radius");
  DilationCheckResult res;
  std::vector<double> pos;
  pos.reserve(pts.points.size());
  for (const auto& p : pts.points) pos.push_back(p.position);
  for (const auto& p : pts.points) {
    const double image = alpha * p.position;
    if (std::abs(image) > pts.window_radius - margin) continue;
    ++res.checked;
    auto it = std::lower_bound(pos.begin(), pos.end(), image);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = pos.size();
    if (it != pos.end() && std::abs(*it - image) < best) {
      best = std::abs(*it - image);
      best_idx = static_cast<std::size_t>(it - pos.begin());
    }
    if (it != pos.begin() && std::abs(*(it - 1) - image) < best) {
      best = std::abs(*(it - 1) - image);
      best_idx = static_cast<std::size_t>(it - pos.begin()) - 1;
    }
    if (best_idx == pos.size() || best > tol ||
        pts.points[best_idx].multiplicity < p.multiplicity) {
      res.violations.push_back(p.position);
      continue;
    }
    res.max_deviation = std::max(res.max_deviation, best);
  }
  return res;
}

}  // namespace toral
