#pragma once

// Laurent polynomials on the m-torus, their pullbacks along a linear
// compactification (exponential polynomials on the line), and the two
// structural screens used before any root certification: self-duality
// (coefficient reversal up to a unimodular monomial) and sampled stability
// on the open polydisk.

#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <utility>

#include <Eigen/Eigenvalues>

#include "toral/torus_core.hpp"

namespace toral {

using Complex = std::complex<double>;

inline constexpr double kFreqMergeTol = 1e-12;  // frequencies closer than this collapse
inline constexpr double kCoeffDropTol = 1e-14;  // merged coefficients below this vanish

/// Finite Fourier sum on the m-torus, exponents in Z^m. Zero coefficients
/// are never stored and at least one term is required.
struct LaurentPoly {
  int m = 0;
  std::map<IntVec, Complex> terms;

  static LaurentPoly from_terms(int m, const std::vector<std::pair<IntVec, Complex>>& list) {
    if (m < 1) throw std::invalid_argument("laurent polynomial: m must be >= 1");
    LaurentPoly p;
    p.m = m;
    for (const auto& [exp, coeff] : list) {
      if (static_cast<int>(exp.size()) != m)
        throw std::invalid_argument("laurent polynomial: exponent dimension != m");
      p.terms[exp] += coeff;
    }
    for (auto it = p.terms.begin(); it != p.terms.end();)
      it = (it->second == Complex{0.0, 0.0}) ? p.terms.erase(it) : std::next(it);
    if (p.terms.empty()) throw std::domain_error("laurent polynomial: no nonzero terms");
    return p;
  }
};

/// P(e^{2 pi i theta}).
inline Complex eval_torus(const LaurentPoly& p, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != p.m)
    throw std::invalid_argument("eval_torus: theta dimension != m");
  Complex acc{0.0, 0.0};
  for (const auto& [k, c] : p.terms) {
    double phase = 0.0;
    for (int i = 0; i < p.m; ++i) phase += static_cast<double>(k[i]) * theta[i];
    acc += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return acc;
}

/// Exponential polynomial sum_j c_j e^{2 pi i y_j z} with strictly increasing
/// real frequencies. from_terms merges frequencies that coincide within
/// kFreqMergeTol and drops merged coefficients below kCoeffDropTol.
class ExpPoly1D {
 public:
  struct Term {
    double freq;
    Complex coeff;
  };

  static ExpPoly1D from_terms(std::vector<Term> list) {
    if (list.empty()) throw std::domain_error("exponential polynomial: zero polynomial");
    std::sort(list.begin(), list.end(),
              [](const Term& a, const Term& b) { return a.freq < b.freq; });
    ExpPoly1D p;
    for (const auto& t : list) {
      if (!p.terms_.empty() && t.freq - p.terms_.back().freq <= kFreqMergeTol)
        p.terms_.back().coeff += t.coeff;
      else
        p.terms_.push_back(t);
    }
    std::erase_if(p.terms_, [](const Term& t) { return std::abs(t.coeff) < kCoeffDropTol; });
    if (p.terms_.empty()) throw std::domain_error("exponential polynomial: zero polynomial");
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  int term_count() const { return static_cast<int>(terms_.size()); }

  /// y_d - y_1; zero for a single term.
  double bandwidth() const { return terms_.back().freq - terms_.front().freq; }
  double min_freq() const { return terms_.front().freq; }
  double max_freq() const { return terms_.back().freq; }

  Complex eval(Complex z) const {
    constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};
    Complex acc{0.0, 0.0};
    for (const auto& t : terms_) acc += t.coeff * std::exp(two_pi_i * t.freq * z);
    return acc;
  }

  Complex eval(double x) const {
    Complex acc{0.0, 0.0};
    for (const auto& t : terms_) acc += t.coeff * std::polar(1.0, 2.0 * std::numbers::pi * t.freq * x);
    return acc;
  }

  Complex derivative(Complex z) const {
    constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};
    Complex acc{0.0, 0.0};
    for (const auto& t : terms_) acc += t.coeff * two_pi_i * t.freq * std::exp(two_pi_i * t.freq * z);
    return acc;
  }

  double coeff_scale() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
  }

 private:
  std::vector<Term> terms_;
};

inline Complex eval_entire(const ExpPoly1D& p, Complex z) { return p.eval(z); }

/// Restriction of P to the orbit of the compactification: frequencies are
/// M^T k. Rationally dependent rows make distinct exponents collide; the
/// merge in from_terms is what realizes that collapse.
inline ExpPoly1D pullback(const LaurentPoly& p, const CompactificationMap& map) {
  if (map.n() != 1) throw std::invalid_argument("pullback: map must have n = 1");
  if (map.m() != p.m) throw std::invalid_argument("pullback: map and polynomial dimension differ");
  std::vector<ExpPoly1D::Term> list;
  list.reserve(p.terms.size());
  for (const auto& [k, c] : p.terms)
    list.push_back({map.pull_frequency(k), c});
  return ExpPoly1D::from_terms(std::move(list));  // throws "zero polynomial" on total cancellation
}

/// Coefficient reversal certificate: P(1/z) = u z^{-a} P(z) with |u| = 1,
/// equivalently c_{a-k} = u c_k for all k. The shift is forced by the
/// support: a = min_lex(supp) + max_lex(supp).
struct SelfDualVerdict {
  bool self_dual = false;
  IntVec shift;        // a
  Complex unimodular;  // u
};

inline SelfDualVerdict is_self_dual(const LaurentPoly& p, double tol = 1e-12) {
  SelfDualVerdict v;
  const IntVec& lo = p.terms.begin()->first;
  const IntVec& hi = p.terms.rbegin()->first;
  IntVec a(p.m);
  for (int i = 0; i < p.m; ++i) a[i] = detail::checked_add(lo[i], hi[i]);
  double cmax = 0.0;
  for (const auto& [k, c] : p.terms) cmax = std::max(cmax, std::abs(c));
  // support must be symmetric under k -> a - k
  IntVec mirror(p.m);
  for (const auto& [k, c] : p.terms) {
    for (int i = 0; i < p.m; ++i) mirror[i] = a[i] - k[i];
    if (p.terms.find(mirror) == p.terms.end()) return v;
  }
  // u from the largest coefficient, then verified globally
  const auto* pivot = &*p.terms.begin();
  for (const auto& kv : p.terms)
    if (std::abs(kv.second) > std::abs(pivot->second)) pivot = &kv;
  for (int i = 0; i < p.m; ++i) mirror[i] = a[i] - pivot->first[i];
  const Complex u = p.terms.at(mirror) / pivot->second;
  if (std::abs(std::abs(u) - 1.0) > tol) return v;
  for (const auto& [k, c] : p.terms) {
    for (int i = 0; i < p.m; ++i) mirror[i] = a[i] - k[i];
    if (std::abs(p.terms.at(mirror) - u * c) > tol * cmax) return v;
  }
  v.self_dual = true;
  v.shift = a;
  v.unimodular = u;
  return v;
}

/// Outcome of the sampled polydisk stability check (m = 2 only).
struct StabilityVerdict {
  bool root_found = false;
  Complex z1{0.0, 0.0};
  Complex z2{0.0, 0.0};
  bool degenerate_slice = false;  // a slice polynomial vanished identically
};

namespace detail {

inline Complex ipow(Complex z, std::int64_t e) {
  Complex acc{1.0, 0.0};
  for (std::int64_t i = 0; i < e; ++i) acc *= z;
  return acc;
}

inline std::vector<Complex> poly_roots(std::vector<Complex> coeffs) {
  // roots of sum_t coeffs[t] w^t via the companion matrix
  const double scale = [&] {
    double s = 0.0;
    for (const auto& c : coeffs) s = std::max(s, std::abs(c));
    return s;
  }();
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * scale) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};
  const int deg = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

// Scan one slicing direction: z_fixed runs over a radius x angle grid in the
// open disk, the other variable is solved exactly on each slice.
inline bool stability_scan(const LaurentPoly& p, int fixed_var, int grid, double tol,
                           StabilityVerdict& out) {
  std::int64_t lo_f = 0, hi_f = 0, lo_s = 0, hi_s = 0;
  bool first = true;
  const int solve_var = 1 - fixed_var;
  for (const auto& [k, c] : p.terms) {
    if (first) {
      lo_f = hi_f = k[fixed_var];
      lo_s = hi_s = k[solve_var];
      first = false;
    } else {
      lo_f = std::min(lo_f, k[fixed_var]);
      hi_f = std::max(hi_f, k[fixed_var]);
      lo_s = std::min(lo_s, k[solve_var]);
      hi_s = std::max(hi_s, k[solve_var]);
    }
  }
  const auto deg_s = static_cast<int>(hi_s - lo_s);
  double p_scale = 0.0;
  for (const auto& [k, c] : p.terms) p_scale += std::abs(c);
  for (int ri = 1; ri <= grid; ++ri) {
    const double r = static_cast<double>(ri) / (grid + 1.0);
    for (int ai = 0; ai < grid; ++ai) {
      const Complex zf = std::polar(r, 2.0 * std::numbers::pi * ai / grid);
      std::vector<Complex> coeffs(static_cast<std::size_t>(deg_s) + 1, Complex{0.0, 0.0});
      for (const auto& [k, c] : p.terms)
        coeffs[static_cast<std::size_t>(k[solve_var] - lo_s)] += c * ipow(zf, k[fixed_var] - lo_f);
      double slice_scale = 0.0;
      for (const auto& q : coeffs) slice_scale = std::max(slice_scale, std::abs(q));
      if (slice_scale < 1e-14 * p_scale) {
        out.root_found = true;
        out.degenerate_slice = true;
        (fixed_var == 0 ? out.z1 : out.z2) = zf;
        (fixed_var == 0 ? out.z2 : out.z1) = Complex{0.5, 0.0};
        return true;
      }
      for (const Complex& w : poly_roots(std::move(coeffs))) {
        if (std::abs(w) < 1.0 - tol && std::abs(w) > 1e-12) {
          out.root_found = true;
          (fixed_var == 0 ? out.z1 : out.z2) = zf;
          (fixed_var == 0 ? out.z2 : out.z1) = w;
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace detail

/// Samples the open polydisk for a joint zero with both moduli < 1 - tol.
/// A no-root-found verdict is evidence, not proof: it is a grid check.
/// Both slicing directions are scanned so cylinders along either axis are
/// caught.
inline StabilityVerdict is_stable_sampled(const LaurentPoly& p, int grid_size = 64,
                                          double tol = 1e-6) {
  if (p.m != 2) throw std::invalid_argument("is_stable_sampled: implemented for m = 2");
  if (grid_size < 2) throw std::invalid_argument("is_stable_sampled: grid too small");
  StabilityVerdict v;
  if (detail::stability_scan(p, 0, grid_size, tol, v)) return v;
  if (detail::stability_scan(p, 1, grid_size, tol, v)) return v;
  return v;
}

}  // namespace toral
