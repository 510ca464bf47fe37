#pragma once

// Linear-flow compactifications of R^n into the m-torus and the exact
// integer-lattice arithmetic (index, annihilator) used by the density
// formulas. Floating point appears only in the real matrix M and its
// orthonormal completion; all subgroup computations are exact.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toral {

using IntVec = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("lattice arithmetic overflow (add)");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("lattice arithmetic overflow (sub)");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("lattice arithmetic overflow (mul)");
  return r;
}

inline std::int64_t abs64(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("lattice arithmetic overflow (abs)");
  return a < 0 ? -a : a;
}

// Dense row-major integer matrix, just enough for the reductions below.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

  std::int64_t& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  static IntMatrix identity(int n) {
    IntMatrix id(n, n);
    for (int i = 0; i < n; ++i) id.at(i, i) = 1;
    return id;
  }

  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows; ++i) std::swap(at(i, a), at(i, b));
  }

  // col_j -= q * col_i
  void axpy_col(int j, int i, std::int64_t q) {
    if (q == 0) return;
    for (int r = 0; r < rows; ++r)
      at(r, j) = checked_sub(at(r, j), checked_mul(q, at(r, i)));
  }

  void negate_col(int j) {
    for (int r = 0; r < rows; ++r) at(r, j) = checked_sub(0, at(r, j));
  }
};

// Integer column reduction to echelon form by unimodular column operations.
// Pivot columns end up in positions 0..rank-1; the remaining columns are
// zero in every row. If transform != nullptr the same column operations are
// applied to it, so starting it at the identity yields W with A_in * W = A_out.
inline int column_echelon(IntMatrix& a, IntMatrix* transform) {
  int rank = 0;
  for (int row = 0; row < a.rows && rank < a.cols; ++row) {
    while (true) {
      int pivot = -1;
      std::int64_t best = 0;
      for (int j = rank; j < a.cols; ++j) {
        std::int64_t v = abs64(a.at(row, j));
        if (v != 0 && (pivot < 0 || v < best)) {
          pivot = j;
          best = v;
        }
      }
      if (pivot < 0) break;  // row already clear on the active columns
      a.swap_cols(rank, pivot);
      if (transform) transform->swap_cols(rank, pivot);
      bool clean = true;
      for (int j = rank + 1; j < a.cols; ++j) {
        std::int64_t q = a.at(row, j) / a.at(row, rank);
        a.axpy_col(j, rank, q);
        if (transform) transform->axpy_col(j, rank, q);
        if (a.at(row, j) != 0) clean = false;
      }
      if (clean) {
        if (a.at(row, rank) < 0) {
          a.negate_col(rank);
          if (transform) transform->negate_col(rank);
        }
        ++rank;
        break;
      }
      // remainders survive: sweep again with the new smallest pivot
    }
  }
  return rank;
}

inline int integer_rank(IntMatrix a) { return column_echelon(a, nullptr); }

// Diagonalize by unimodular row and column operations. The product of the
// nonzero diagonal entries equals the product of the elementary divisors
// (the rank-size determinantal divisor), which is all the index needs.
inline std::int64_t elementary_divisor_product(IntMatrix a) {
  const int t_max = std::min(a.rows, a.cols);
  std::int64_t product = 1;
  for (int t = 0; t < t_max; ++t) {
    while (true) {
      int pi = -1, pj = -1;
      std::int64_t best = 0;
      for (int i = t; i < a.rows; ++i)
        for (int j = t; j < a.cols; ++j) {
          std::int64_t v = abs64(a.at(i, j));
          if (v != 0 && (pi < 0 || v < best)) {
            pi = i;
            pj = j;
            best = v;
          }
        }
      if (pi < 0) return product;  // submatrix exhausted
      // move pivot to (t,t)
      if (pi != t)
        for (int j = 0; j < a.cols; ++j) std::swap(a.at(t, j), a.at(pi, j));
      if (pj != t) a.swap_cols(t, pj);
      bool clean = true;
      for (int i = t + 1; i < a.rows; ++i) {
        std::int64_t q = a.at(i, t) / a.at(t, t);
        if (q != 0)
          for (int j = t; j < a.cols; ++j)
            a.at(i, j) = checked_sub(a.at(i, j), checked_mul(q, a.at(t, j)));
        if (a.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < a.cols; ++j) {
        std::int64_t q = a.at(t, j) / a.at(t, t);
        a.axpy_col(j, t, q);
        if (a.at(t, j) != 0) clean = false;
      }
      if (clean) {
        product = checked_mul(product, abs64(a.at(t, t)));
        break;
      }
    }
  }
  return product;
}

inline double frac_unit(double y) {
  double f = y - std::floor(y);
  if (f >= 1.0) f = 0.0;  // guard against floor rounding at the seam
  return f;
}

}  // namespace detail

/// Result of the bounded search for an integer relation M^T k = 0.
struct IndependenceVerdict {
  bool independent = true;
  IntVec relation;  // primitive, leading entry positive; empty when independent
  std::int64_t bound = 0;
};

/// Linear compactification x -> (M x mod Z^m) with orthonormal columns.
///
/// The constructor Gram-Schmidts the supplied columns (so M^T M = I_n) and
/// completes them to a positively oriented orthonormal frame [M N]. It also
/// screens M's rows for integer relations up to a bound; the verdict is
/// recorded on the map rather than enforced, so degenerate (periodic) maps
/// remain constructible for lattice checks and for the relation search
/// itself. Pipelines that require dense images must consult independence().
class CompactificationMap {
 public:
  CompactificationMap(int m, int n, const std::vector<double>& m_entries_row_major,
                      std::int64_t independence_bound = -1)
      : m_(m), n_(n) {
    if (m < 1 || n < 1 || n > m)
      throw std::invalid_argument("compactification map needs 1 <= n <= m");
    if (m_entries_row_major.size() != static_cast<std::size_t>(m) * n)
      throw std::invalid_argument("compactification map: entry count != m*n");
    orthonormalize(m_entries_row_major);
    complete_frame();
    screen(independence_bound);
  }

  /// m = 2, n = 1 map in direction (1, tan_theta), normalized internally.
  static CompactificationMap from_tangent(double tan_theta,
                                          std::int64_t independence_bound = -1) {
    return CompactificationMap(2, 1, {1.0, tan_theta}, independence_bound);
  }

  int m() const { return m_; }
  int n() const { return n_; }

  double M(int i, int j) const { return m_data_[static_cast<std::size_t>(i) * n_ + j]; }
  double N(int i, int j) const { return n_data_[static_cast<std::size_t>(i) * (m_ - n_) + j]; }
  const std::vector<double>& m_data() const { return m_data_; }
  const std::vector<double>& n_data() const { return n_data_; }

  /// M x reduced componentwise into [0,1).
  std::vector<double> project(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
      throw std::invalid_argument("project: argument dimension != n");
    std::vector<double> out(m_);
    for (int i = 0; i < m_; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n_; ++j) acc += M(i, j) * x[j];
      out[i] = detail::frac_unit(acc);
    }
    return out;
  }

  std::vector<double> project(double x) const {
    if (n_ != 1) throw std::invalid_argument("scalar project requires n = 1");
    return project(std::span<const double>(&x, 1));
  }

  /// M^T k for integer k; the frequency of the character k pulled to the line.
  double pull_frequency(std::span<const std::int64_t> k) const {
    if (n_ != 1) throw std::invalid_argument("pull_frequency requires n = 1");
    if (static_cast<int>(k.size()) != m_)
      throw std::invalid_argument("pull_frequency: k dimension != m");
    double acc = 0.0;
    for (int i = 0; i < m_; ++i) acc += M(i, 0) * static_cast<double>(k[i]);
    return acc;
  }

  const IndependenceVerdict& independence() const { return indep_; }

 private:
  void orthonormalize(const std::vector<double>& raw) {
    // modified Gram-Schmidt on the input columns
    std::vector<std::vector<double>> cols(n_, std::vector<double>(m_));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) cols[j][i] = raw[static_cast<std::size_t>(i) * n_ + j];
    double scale = 0.0;
    for (const auto& c : cols)
      for (double v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw std::invalid_argument("compactification map: zero matrix");
    for (int j = 0; j < n_; ++j) {
      for (int p = 0; p < j; ++p) {
        double dot = 0.0;
        for (int i = 0; i < m_; ++i) dot += cols[j][i] * cols[p][i];
        for (int i = 0; i < m_; ++i) cols[j][i] -= dot * cols[p][i];
      }
      double nrm = 0.0;
      for (int i = 0; i < m_; ++i) nrm += cols[j][i] * cols[j][i];
      nrm = std::sqrt(nrm);
      if (nrm < 1e-12 * scale)
        throw std::invalid_argument("compactification map: rank-deficient columns");
      for (int i = 0; i < m_; ++i) cols[j][i] /= nrm;
    }
    m_data_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) m_data_[static_cast<std::size_t>(i) * n_ + j] = cols[j][i];
  }

  void complete_frame() {
    const int q = m_ - n_;
    n_data_.assign(static_cast<std::size_t>(m_) * q, 0.0);
    if (q == 0) return;
    std::vector<std::vector<double>> frame;
    frame.reserve(m_);
    for (int j = 0; j < n_; ++j) {
      std::vector<double> c(m_);
      for (int i = 0; i < m_; ++i) c[i] = M(i, j);
      frame.push_back(std::move(c));
    }
    for (int e = 0; e < m_ && static_cast<int>(frame.size()) < m_; ++e) {
      std::vector<double> c(m_, 0.0);
      c[e] = 1.0;
      for (const auto& f : frame) {
        double dot = 0.0;
        for (int i = 0; i < m_; ++i) dot += c[i] * f[i];
        for (int i = 0; i < m_; ++i) c[i] -= dot * f[i];
      }
      double nrm = 0.0;
      for (double v : c) nrm += v * v;
      nrm = std::sqrt(nrm);
      if (nrm < 1e-8) continue;
      for (double& v : c) v /= nrm;
      frame.push_back(std::move(c));
    }
    if (static_cast<int>(frame.size()) != m_)
      throw std::logic_error("orthonormal completion failed");
    if (frame_determinant(frame) < 0.0)
      for (double& v : frame.back()) v = -v;  // [M N] must be special orthogonal
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < m_; ++i)
        n_data_[static_cast<std::size_t>(i) * q + j] = frame[n_ + j][i];
  }

  double frame_determinant(const std::vector<std::vector<double>>& frame) const {
    std::vector<std::vector<double>> a(m_, std::vector<double>(m_));
    for (int j = 0; j < m_; ++j)
      for (int i = 0; i < m_; ++i) a[i][j] = frame[j][i];
    double det = 1.0;
    for (int c = 0; c < m_; ++c) {
      int p = c;
      for (int r = c + 1; r < m_; ++r)
        if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
      if (a[p][c] == 0.0) return 0.0;
      if (p != c) {
        std::swap(a[p], a[c]);
        det = -det;
      }
      det *= a[c][c];
      for (int r = c + 1; r < m_; ++r) {
        double f = a[r][c] / a[c][c];
        for (int k = c; k < m_; ++k) a[r][k] -= f * a[c][k];
      }
    }
    return det;
  }

  void screen(std::int64_t bound);

  int m_, n_;
  std::vector<double> m_data_;  // m x n, row-major
  std::vector<double> n_data_;  // m x (m-n), row-major
  IndependenceVerdict indep_;
};

namespace detail {

inline void normalize_relation(IntVec& k) {
  std::int64_t g = 0;
  for (std::int64_t v : k) g = std::gcd(g, abs64(v));
  if (g > 1)
    for (std::int64_t& v : k) v /= g;
  for (std::int64_t v : k) {
    if (v > 0) break;
    if (v < 0) {
      for (std::int64_t& w : k) w = checked_sub(0, w);
      break;
    }
  }
}

// Continued-fraction relation search for a 2-row, 1-column M. Best rational
// approximations to the row ratio are convergents, so checking convergents up
// to the bound is equivalent to the exhaustive box search.
inline IndependenceVerdict relation_by_convergents(double a, double b, std::int64_t bound) {
  IndependenceVerdict v;
  v.bound = bound;
  constexpr double kTol = 1e-10;
  if (std::abs(a) < kTol) {
    v.independent = false;
    v.relation = {1, 0};
    return v;
  }
  if (std::abs(b) < kTol) {
    v.independent = false;
    v.relation = {0, 1};
    return v;
  }
  // want k1*a + k2*b = 0, i.e. k1/k2 = -b/a
  const double x = -b / a;
  double rem = x;
  std::int64_t p_prev = 0, q_prev = 1;
  std::int64_t p_cur = 1, q_cur = 0;  // h(-1)/k(-1); convergents of x are p/q
  for (int iter = 0; iter < 128; ++iter) {
    const double fl = std::floor(rem);
    if (std::abs(fl) > 4.0e18) break;
    const auto ai = static_cast<std::int64_t>(fl);
    std::int64_t p_next, q_next;
    try {
      p_next = checked_add(checked_mul(ai, p_cur), p_prev);
      q_next = checked_add(checked_mul(ai, q_cur), q_prev);
    } catch (const std::overflow_error&) {
      break;
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    if (std::max(abs64(p_cur), abs64(q_cur)) > bound) break;
    const double resid = std::abs(a * static_cast<double>(p_cur) + b * static_cast<double>(q_cur));
    if (resid < kTol) {
      v.independent = false;
      v.relation = {p_cur, q_cur};
      normalize_relation(v.relation);
      return v;
    }
    const double frac = rem - fl;
    if (frac < 1e-18) break;  // ratio is (numerically) rational and already rejected
    rem = 1.0 / frac;
  }
  return v;
}

}  // namespace detail

/// Bounded search for a nonzero integer vector k with ||M^T k|| < 1e-10 and
/// ||k||_inf <= bound. m = 2, n = 1 uses continued fractions; otherwise the
/// box is enumerated with the first coordinate optimized in closed form.
inline IndependenceVerdict check_rational_independence(const CompactificationMap& map,
                                                       std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("independence bound must be >= 1");
  constexpr double kTol = 1e-10;
  const int m = map.m(), n = map.n();
  if (m == 2 && n == 1)
    return detail::relation_by_convergents(map.M(0, 0), map.M(1, 0), bound);

  IndependenceVerdict v;
  v.bound = bound;
  // rows of M as n-vectors
  std::vector<std::vector<double>> rows(m, std::vector<double>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = map.M(i, j);
  double r0sq = 0.0;
  for (double t : rows[0]) r0sq += t * t;
  if (r0sq < kTol * kTol) {
    v.independent = false;
    v.relation = IntVec(m, 0);
    v.relation[0] = 1;
    return v;
  }
  IntVec k(m, -bound);
  std::vector<double> tail(n);
  while (true) {
    // residual without the first coordinate
    std::fill(tail.begin(), tail.end(), 0.0);
    bool tail_zero = true;
    for (int i = 1; i < m; ++i) {
      if (k[i] != 0) tail_zero = false;
      for (int j = 0; j < n; ++j) tail[j] += static_cast<double>(k[i]) * rows[i][j];
    }
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += tail[j] * rows[0][j];
    const double star = -dot / r0sq;
    for (double cand : {std::floor(star), std::ceil(star)}) {
      if (std::abs(cand) > static_cast<double>(bound)) cand = std::copysign(static_cast<double>(bound), cand);
      const auto k1 = static_cast<std::int64_t>(cand);
      if (k1 == 0 && tail_zero) continue;
      double res = 0.0;
      for (int j = 0; j < n; ++j) {
        const double t = tail[j] + static_cast<double>(k1) * rows[0][j];
        res += t * t;
      }
      if (std::sqrt(res) < kTol) {
        v.independent = false;
        v.relation = k;
        v.relation[0] = k1;
        detail::normalize_relation(v.relation);
        return v;
      }
    }
    // advance odometer over coordinates 1..m-1
    int pos = m - 1;
    while (pos >= 1 && k[pos] == bound) {
      k[pos] = -bound;
      --pos;
    }
    if (pos < 1) break;
    ++k[pos];
  }
  return v;
}

inline void CompactificationMap::screen(std::int64_t bound) {
  if (bound < 0) bound = (m_ == 2 && n_ == 1) ? 1'000'000 : 1'000;
  if (n_ == m_) {
    // square orthonormal M: ||M^T k|| = ||k|| >= 1, nothing to search
    indep_.independent = true;
    indep_.bound = bound;
    return;
  }
  indep_ = check_rational_independence(*this, bound);
}

/// Finitely generated subgroup of Z^m, generators validated to be
/// Q-linearly independent by exact integer elimination.
class LatticeSubgroup {
 public:
  LatticeSubgroup(int ambient_dim, std::vector<IntVec> generators)
      : m_(ambient_dim), gens_(std::move(generators)) {
    if (m_ < 1) throw std::invalid_argument("lattice subgroup: ambient dimension must be >= 1");
    for (const auto& g : gens_)
      if (static_cast<int>(g.size()) != m_)
        throw std::invalid_argument("lattice subgroup: generator dimension mismatch");
    if (!gens_.empty()) {
      detail::IntMatrix a(m_, static_cast<int>(gens_.size()));
      for (int j = 0; j < a.cols; ++j)
        for (int i = 0; i < m_; ++i) a.at(i, j) = gens_[j][i];
      if (detail::integer_rank(std::move(a)) != static_cast<int>(gens_.size()))
        throw std::invalid_argument("lattice subgroup: generators are linearly dependent");
    }
  }

  int ambient_dim() const { return m_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  const std::vector<IntVec>& generators() const { return gens_; }

 private:
  int m_;
  std::vector<IntVec> gens_;
};

/// Index of S inside its projective closure S1 = { k : a k in S for some a != 0 }.
/// Equals the product of the elementary divisors of the generator matrix;
/// for rank one this is the gcd of the generator's entries.
inline std::int64_t projective_index(const LatticeSubgroup& s) {
  if (s.rank() == 0) throw std::invalid_argument("projective_index: rank-0 subgroup");
  detail::IntMatrix a(s.ambient_dim(), s.rank());
  for (int j = 0; j < a.cols; ++j)
    for (int i = 0; i < a.rows; ++i) a.at(i, j) = s.generators()[j][i];
  return detail::elementary_divisor_product(std::move(a));
}

/// Basis (as columns) of { k in Z^m : k . s = 0 for all s in S }. The basis
/// generates the full, saturated annihilator lattice: column operations on
/// the generator rows are tracked in a unimodular W, whose columns over the
/// zeroed positions are primitive and complete.
inline std::vector<IntVec> annihilator_basis(const LatticeSubgroup& s) {
  const int m = s.ambient_dim();
  if (s.rank() == m) return {};
  if (s.rank() == 0) {
    std::vector<IntVec> id;
    for (int j = 0; j < m; ++j) {
      IntVec e(m, 0);
      e[j] = 1;
      id.push_back(std::move(e));
    }
    return id;
  }
  detail::IntMatrix g(s.rank(), m);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < m; ++j) g.at(i, j) = s.generators()[i][j];
  detail::IntMatrix w = detail::IntMatrix::identity(m);
  const int rank = detail::column_echelon(g, &w);
  std::vector<IntVec> basis;
  for (int j = rank; j < m; ++j) {
    IntVec col(m);
    for (int i = 0; i < m; ++i) col[i] = w.at(i, j);
    detail::normalize_relation(col);
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace toral
