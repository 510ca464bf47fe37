#pragma once

// Real roots of exponential polynomials with winding-number multiplicities,
// argument-principle counts over rectangles, and the density certificate
// that compares the measured real-root density against the complex one.

#include <array>
#include <functional>
#include <optional>

#include "toral/trigpoly.hpp"

namespace toral {

/// Sorted weighted point set on the line. window_radius is the R of the
/// producing window [-R, R] (or max(|a|, |b|) for an asymmetric request);
/// Bohr means downstream normalize by 2R. min_gap records the separation
/// of distinct points, +inf when fewer than two.
struct WeightedPointSet {
  struct Point {
    double position;
    int multiplicity;
  };
  std::vector<Point> points;
  double window_radius = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  std::vector<std::string> diagnostics;  // flagged anomalies, empty when clean

  int total_count() const {
    int n = 0;
    for (const auto& p : points) n += p.multiplicity;
    return n;
  }
};

struct RootFindOptions {
  double grid_step = 0.0;        // 0: default 0.4 / bandwidth
  double newton_tol = 1e-12;
  double mult_radius = 0.0;      // 0: default min(0.25 * min gap, 0.05 / bandwidth)
  double seed_threshold = std::numeric_limits<double>::infinity();  // on |p|^2
  int max_newton_iters = 100;
};

struct QuadOptions {
  double contour_min_abs = 1e-9;  // |p| guard on sampled contour points
  int max_subdivision_depth = 48;
  int max_dilation_retries = 5;
  double dilation = 1e-6;
};

namespace detail {

struct ContourRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accumulated argument of p along path(t), t in [t0, t1], sampled at n0
// points and refined until each step turns by at most pi/2 and magnitude
// changes by at most 2x. With those bounds the per-step principal argument
// matches the continuous lift, so the sum telescopes to the exact winding.
inline double accumulated_argument(const ExpPoly1D& p,
                                   const std::function<Complex(double)>& path, double t0,
                                   double t1, int n0, const QuadOptions& opts) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double log2 = std::numbers::ln2;
  double total = 0.0;
  std::function<void(double, Complex, double, Complex, int)> advance =
      [&](double ta, Complex fa, double tb, Complex fb, int depth) {
        const Complex ratio = fb / fa;
        const double dphi = std::arg(ratio);
        if (std::abs(dphi) <= half_pi && std::abs(std::log(std::abs(ratio))) <= log2) {
          total += dphi;
          return;
        }
        if (depth <= 0)
          throw std::runtime_error(
              "winding count: contour refinement exhausted; increase quadrature density");
        const double tm = 0.5 * (ta + tb);
        const Complex fm = p.eval(path(tm));
        if (std::abs(fm) < opts.contour_min_abs)
          throw ContourRootError("winding count: contour passes too close to a zero");
        advance(ta, fa, tm, fm, depth - 1);
        advance(tm, fm, tb, fb, depth - 1);
      };
  Complex prev = p.eval(path(t0));
  if (std::abs(prev) < opts.contour_min_abs)
    throw ContourRootError("winding count: contour passes too close to a zero");
  for (int i = 1; i <= n0; ++i) {
    const double t = t0 + (t1 - t0) * i / n0;
    const Complex cur = p.eval(path(t));
    if (std::abs(cur) < opts.contour_min_abs)
      throw ContourRootError("winding count: contour passes too close to a zero");
    advance(t0 + (t1 - t0) * (i - 1) / n0, prev, t, cur, opts.max_subdivision_depth);
    prev = cur;
  }
  return total;
}

inline int rectangle_winding(const ExpPoly1D& p, double re_lo, double re_hi, double im_lo,
                             double im_hi, const QuadOptions& opts) {
  const double y_max = std::max(std::abs(p.min_freq()), std::abs(p.max_freq()));
  const auto samples = [&](double len) {
    return 8 + static_cast<int>(std::ceil(8.0 * y_max * len));
  };
  double total = 0.0;
  const std::array<std::pair<Complex, Complex>, 4> edges = {{
      {{re_lo, im_lo}, {re_hi, im_lo}},
      {{re_hi, im_lo}, {re_hi, im_hi}},
      {{re_hi, im_hi}, {re_lo, im_hi}},
      {{re_lo, im_hi}, {re_lo, im_lo}},
  }};
  for (const auto& [za, zb] : edges) {
    const Complex delta = zb - za;
    total += accumulated_argument(
        p, [za_ = za, delta](double t) { return za_ + t * delta; }, 0.0, 1.0,
        samples(std::abs(delta)), opts);
  }
  const double w = total / (2.0 * std::numbers::pi);
  const double r = std::round(w);
  if (std::abs(w - r) >= 0.05)
    throw std::runtime_error("winding count: non-integral winding; increase quadrature density");
  return static_cast<int>(r);
}

inline int circle_winding(const ExpPoly1D& p, double center, double radius,
                          double& residual_out) {
  QuadOptions opts;
  opts.contour_min_abs = 1e-13;
  const double y_max = std::max(std::abs(p.min_freq()), std::abs(p.max_freq()));
  const int n0 = 64 + static_cast<int>(std::ceil(16.0 * y_max * radius));
  const double total = accumulated_argument(
      p,
      [center, radius](double t) {
        return Complex{center, 0.0} + std::polar(radius, 2.0 * std::numbers::pi * t);
      },
      0.0, 1.0, n0, opts);
  const double w = total / (2.0 * std::numbers::pi);
  const double r = std::round(w);
  residual_out = std::abs(w - r);
  return static_cast<int>(r);
}

}  // namespace detail

/// Zeros of the analytic extension inside [re_lo, re_hi] x [im_lo, im_hi],
/// counted with multiplicity by the argument principle. A contour running
/// into a zero triggers up to max_dilation_retries absolute dilations of the
/// rectangle by opts.dilation per side.
inline int complex_root_count(const ExpPoly1D& p, double re_lo, double re_hi, double im_lo,
                              double im_hi, const QuadOptions& opts = {}) {
  if (!(re_lo < re_hi) || !(im_lo < im_hi))
    throw std::invalid_argument("complex_root_count: empty rectangle");
  double a = re_lo, b = re_hi, c = im_lo, d = im_hi;
  for (int attempt = 0;; ++attempt) {
    try {
      return detail::rectangle_winding(p, a, b, c, d, opts);
    } catch (const detail::ContourRootError&) {
      if (attempt >= opts.max_dilation_retries)
        throw std::runtime_error(
            "complex_root_count: contour kept hitting zeros after dilation retries");
      a -= opts.dilation;
      b += opts.dilation;
      c -= opts.dilation;
      d += opts.dilation;
    }
  }
}

/// Density of the full zero set of the analytic extension: y_d - y_1.
inline double density_complex(const ExpPoly1D& p) { return p.bandwidth(); }

/// Real zeros in [a, b] with winding multiplicities. Newton seeds come from
/// two passes over a grid of |p|^2: local minima of the coarse scan (each
/// spawning three starts so one dip covering two nearby roots resolves both),
/// plus every sample of an 8x finer scan that falls below the derivative-bound
/// dip threshold — the value any sample within half a fine step of a zero is
/// guaranteed to stay under, which catches dips narrower than the coarse step.
/// Converged iterates with a non-real limit are discarded.
inline WeightedPointSet real_roots(const ExpPoly1D& p, double a, double b,
                                   RootFindOptions opts = {}) {
  if (!(a < b)) throw std::invalid_argument("real_roots: empty interval");
  WeightedPointSet out;
  out.window_radius = std::max(std::abs(a), std::abs(b));
  if (p.term_count() < 2) return out;  // single exponential never vanishes

  const double bw = p.bandwidth();
  const double h = opts.grid_step > 0.0 ? opts.grid_step : 0.4 / bw;
  if (!(h < 0.5 / bw))
    throw std::invalid_argument("real_roots: grid_step must be < 1/(2 (y_d - y_1))");
  const double ntol = opts.newton_tol;

  // grid scan of |p|^2
  const auto n_cells = static_cast<std::size_t>(std::ceil((b - a) / h));
  std::vector<double> vals(n_cells + 1);
  for (std::size_t i = 0; i <= n_cells; ++i) {
    const double x = std::min(a + static_cast<double>(i) * h, b);
    vals[i] = std::norm(p.eval(x));
  }
  std::vector<double> seeds;
  const auto push_seed_triple = [&](double x) {
    seeds.push_back(x - h / 3.0);
    seeds.push_back(x);
    seeds.push_back(x + h / 3.0);
  };
  for (std::size_t i = 0; i + 2 <= n_cells; ++i) {
    const std::size_t j = i + 1;
    if (vals[j] <= vals[j - 1] && vals[j] <= vals[j + 1] && vals[j] < opts.seed_threshold)
      push_seed_triple(a + static_cast<double>(j) * h);
  }
  if (n_cells >= 1 && vals[0] < vals[1] && vals[0] < opts.seed_threshold) push_seed_triple(a);
  if (n_cells >= 1 && vals[n_cells] < vals[n_cells - 1] && vals[n_cells] < opts.seed_threshold)
    push_seed_triple(b);

  // A zero's V-dip can hide between coarse samples under a falling envelope
  // (the sampled sequence then decreases right through it and never forms a
  // local minimum). Second pass: every zero has a fine sample within h1/2,
  // and |p| there is at most M1 h1/2 + M2 h1^2/8 by the derivative bounds,
  // so seeding every fine sample below that threshold cannot miss a root.
  {
    const double h1 = h / 8.0;
    double m1 = 0.0, m2 = 0.0;
    for (const auto& t : p.terms()) {
      const double w = 2.0 * std::numbers::pi * std::abs(t.freq);
      m1 += std::abs(t.coeff) * w;
      m2 += std::abs(t.coeff) * w * w;
    }
    const double dip = m1 * h1 / 2.0 + m2 * h1 * h1 / 8.0;
    const double dip2 = std::min(dip * dip, opts.seed_threshold);
    const auto n_fine = static_cast<std::size_t>(std::ceil((b - a) / h1));
    for (std::size_t i = 0; i <= n_fine; ++i) {
      const double x = std::min(a + static_cast<double>(i) * h1, b);
      if (std::norm(p.eval(x)) < dip2) seeds.push_back(x);
    }
  }

  // Newton on the analytic extension
  constexpr double kAcceptIm = 1e-9;
  std::vector<double> found;
  for (double seed : seeds) {
    Complex z{seed, 0.0};
    bool converged = false;
    for (int it = 0; it < opts.max_newton_iters; ++it) {
      const Complex f = p.eval(z);
      const Complex df = p.derivative(z);
      if (std::abs(df) < 1e-300) break;
      const Complex step = f / df;
      z -= step;
      if (std::abs(step) < ntol) {
        converged = true;
        break;
      }
      if (std::abs(z.real() - seed) > 1.0 / bw + 1.0) break;  // wandered off this dip
    }
    if (!converged) {
      if (std::abs(p.eval(z)) < 1e-6 * p.coeff_scale() && std::abs(z.imag()) <= kAcceptIm)
        out.diagnostics.push_back("newton did not converge near x = " + std::to_string(z.real()));
      continue;
    }
    if (std::abs(z.imag()) > kAcceptIm) continue;  // complex zero, not a real root
    const double x = z.real();
    if (x < a - ntol || x > b + ntol) continue;
    found.push_back(x);
  }
  std::sort(found.begin(), found.end());

  // Cluster within the Newton resolution. At a multiple root Newton's
  // attainable accuracy degrades to ~sqrt(eps) * scale, so the merge
  // tolerance must grow with |x|; points closer than this resolution merge
  // into one site and carry their total winding as the multiplicity.
  const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  std::vector<double> roots;
  for (double x : found) {
    const double cluster_tol =
        std::max(10.0 * ntol, sqrt_eps * (1.0 + std::abs(x)));
    if (!roots.empty() && x - roots.back() <= cluster_tol) {
      if (std::abs(p.eval(x)) < std::abs(p.eval(roots.back()))) roots.back() = x;
    } else {
      roots.push_back(x);
    }
  }
  if (roots.empty()) return out;

  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < roots.size(); ++i) min_gap = std::min(min_gap, roots[i] - roots[i - 1]);
  out.min_gap = min_gap;

  const double radius =
      opts.mult_radius > 0.0 ? opts.mult_radius : std::min(0.25 * min_gap, 0.05 / bw);
  for (double x : roots) {
    double residual = 0.0;
    int w = 0;
    try {
      w = detail::circle_winding(p, x, radius, residual);
    } catch (const detail::ContourRootError&) {
      throw std::runtime_error("real_roots: ill-conditioned multiplicity at x = " +
                               std::to_string(x));
    }
    if (residual >= 0.1)
      throw std::runtime_error("real_roots: ill-conditioned multiplicity at x = " +
                               std::to_string(x));
    if (w <= 0) {
      out.diagnostics.push_back("discarded spurious minimum near x = " + std::to_string(x));
      continue;
    }
    out.points.push_back({x, w});
  }
  return out;
}

/// Real-rootedness certificate: compares the measured real density on
/// [-R, R] with the complex density y_d - y_1 and cross-checks the total
/// against an argument-principle count over a strip tall enough (by a
/// coefficient heuristic) to contain every zero of the extension.
struct RealRootedVerdict {
  bool real_rooted = false;
  double rho_real = 0.0;
  double rho_complex = 0.0;
  double window_radius = 0.0;
  double tolerance = 0.0;
  double strip_height = 0.0;
  long long strip_count = 0;
  bool strip_agrees = true;  // strip density matched rho_complex within tolerance
  WeightedPointSet roots;
};

inline RealRootedVerdict is_real_rooted(const ExpPoly1D& p, double window_radius,
                                        double tol = 0.0) {
  RealRootedVerdict v;
  v.window_radius = window_radius;
  v.rho_complex = density_complex(p);
  if (p.term_count() >= 2 && window_radius < 50.0 / p.bandwidth())
    throw std::invalid_argument("is_real_rooted: window must satisfy R >= 50 / (y_d - y_1)");
  v.roots = real_roots(p, -window_radius, window_radius);
  v.rho_real = v.roots.total_count() / (2.0 * window_radius);
  v.tolerance = tol > 0.0 ? tol : 5.0 / (2.0 * window_radius) + 0.01 * v.rho_complex;
  v.real_rooted = std::abs(v.rho_real - v.rho_complex) < v.tolerance;
  if (p.term_count() >= 2) {
    const auto& t = p.terms();
    double csum = 0.0;
    for (const auto& term : t) csum += std::abs(term.coeff);
    const double cmin = std::min(std::abs(t.front().coeff), std::abs(t.back().coeff));
    const double gap1 = t[1].freq - t[0].freq;
    v.strip_height = (std::log(csum) - std::log(cmin)) / (2.0 * std::numbers::pi * gap1);
    v.strip_count =
        complex_root_count(p, -window_radius, window_radius, -v.strip_height, v.strip_height);
    v.strip_agrees =
        std::abs(static_cast<double>(v.strip_count) / (2.0 * window_radius) - v.rho_complex) <
        v.tolerance;
  }
  return v;
}

}  // namespace toral
