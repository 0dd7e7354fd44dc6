#pragma once

// Set-theoretic reference implementation of the subspace operations, used
// as ground truth by the test suites. Deliberately naive row-reduction
// linear algebra on spanning vectors; it shares no product code with the
// algebra kernel.

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gasub/blade.hpp"
#include "gasub/signature.hpp"

namespace gasub::oracle {

using Matrix = std::vector<std::vector<double>>;

namespace detail {

inline double max_abs_entry(const Matrix& m) {
  double v = 0.0;
  for (const auto& row : m)
    for (double x : row) v = std::max(v, std::abs(x));
  return v;
}

// Reduced row echelon form with partial pivoting; pivots below
// 1e-10 * (max entry) are rejected. Returns pivot columns.
inline std::vector<std::size_t> reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t cols = m[0].size();
  double thr = 1e-10 * max_abs_entry(m);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < m.size(); ++i)
      if (std::abs(m[i][col]) > std::abs(m[best][col])) best = i;
    if (std::abs(m[best][col]) <= thr) continue;
    std::swap(m[row], m[best]);
    double piv = m[row][col];
    for (double& x : m[row]) x /= piv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row) continue;
      double f = m[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(pivots.size());  // drop the dependent rows
  return pivots;
}

inline Matrix kernel(Matrix m, std::size_t cols) {
  auto pivots = reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<double> v(cols, 0.0);
    v[free_col] = 1.0;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// A subspace held as a reduced-row-echelon spanning set: rows independent,
/// leading entries 1, pivots ascending. The canonical form makes equality a
/// plain entrywise comparison.
struct SubspaceBasis {
  Signature sig;
  Matrix rows;

  int dim() const { return static_cast<int>(rows.size()); }
};

inline SubspaceBasis make_subspace(Signature sig, Matrix spanning) {
  for (const auto& row : spanning)
    if (row.size() != static_cast<std::size_t>(sig.n()))
      throw Error("spanning vector has the wrong dimension");
  detail::reduce(spanning);
  return SubspaceBasis{sig, std::move(spanning)};
}

/// The diagonal Gram matrix of the signature's metric.
inline Matrix gram_of(Signature sig) {
  std::size_t n = sig.n();
  Matrix g(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = sig.generator_square(static_cast<int>(i) + 1);
  return g;
}

inline Matrix euclidean_gram(Signature sig) {
  Matrix g = gram_of(sig);
  for (std::size_t i = 0; i < g.size(); ++i) g[i][i] = 1.0;
  return g;
}

/// The subspace {x : x ^ A = 0} of a nonzero blade, via the null space of
/// the coefficient matrix of x -> x ^ A. The wedge coefficients are
/// computed here from the index-set parity alone, independent of the
/// algebra kernel.
inline SubspaceBasis span_of_blade(const Blade& a) {
  if (a.is_zero()) throw EmptyInput();
  int n = a.sig().n();
  // One matrix row per (step+1)-subset appearing in some x ^ A.
  std::vector<std::uint32_t> row_masks;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
    if (std::popcount(mask) == a.step() + 1) row_masks.push_back(mask);
  Matrix w(row_masks.size(), std::vector<double>(n, 0.0));
  for (std::size_t row = 0; row < row_masks.size(); ++row) {
    std::uint32_t full = row_masks[row];
    for (int i = 0; i < n; ++i) {
      std::uint32_t bit = std::uint32_t{1} << i;
      if (!(full & bit)) continue;
      std::uint32_t s = full & ~bit;
      double c = a.mv().coeff(s);
      if (c == 0.0) continue;
      int below = std::popcount(s & (bit - 1));
      w[row][i] = (below & 1) ? -c : c;
    }
  }
  Matrix span = detail::kernel(std::move(w), n);
  return make_subspace(a.sig(), std::move(span));
}

/// Largest common subspace.
inline SubspaceBasis intersection(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.sig != b.sig) throw SignatureMismatch();
  std::size_t n = a.sig.n();
  std::size_t da = a.rows.size(), db = b.rows.size();
  if (da == 0 || db == 0) return SubspaceBasis{a.sig, {}};
  // x = alpha^T A = beta^T B: kernel of [A^T | -B^T] in the coefficients.
  Matrix sys(n, std::vector<double>(da + db, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < da; ++j) sys[i][j] = a.rows[j][i];
    for (std::size_t j = 0; j < db; ++j) sys[i][da + j] = -b.rows[j][i];
  }
  Matrix coeffs = detail::kernel(std::move(sys), da + db);
  Matrix span;
  for (const auto& gamma : coeffs) {
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t i = 0; i < n; ++i) x[i] += gamma[j] * a.rows[j][i];
    span.push_back(std::move(x));
  }
  return make_subspace(a.sig, std::move(span));
}

/// The span of the two subspaces.
inline SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.sig != b.sig) throw SignatureMismatch();
  Matrix all = a.rows;
  all.insert(all.end(), b.rows.begin(), b.rows.end());
  return make_subspace(a.sig, std::move(all));
}

/// {a in A : a^T G b = 0 for all b in B}, the metric-orthogonal complement
/// of B inside A. B must be a subspace of A.
inline SubspaceBasis metric_complement_within(const SubspaceBasis& b, const SubspaceBasis& a,
                                              const Matrix& gram) {
  if (a.sig != b.sig) throw SignatureMismatch();
  if (subspace_sum(a, b).dim() != a.dim()) throw NotASubspace();
  std::size_t n = a.sig.n();
  std::size_t da = a.rows.size(), db = b.rows.size();
  if (da == 0) return SubspaceBasis{a.sig, {}};
  // Parameterize candidates as alpha^T A and impose B G A^T alpha = 0.
  Matrix sys(db, std::vector<double>(da, 0.0));
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) v += b.rows[i][k] * gram[k][l] * a.rows[j][l];
      sys[i][j] = v;
    }
  Matrix coeffs = db == 0 ? Matrix{} : detail::kernel(std::move(sys), da);
  if (db == 0) {
    coeffs.assign(da, std::vector<double>(da, 0.0));
    for (std::size_t j = 0; j < da; ++j) coeffs[j][j] = 1.0;
  }
  Matrix span;
  for (const auto& alpha : coeffs) {
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha[j] * a.rows[j][i];
    span.push_back(std::move(x));
  }
  return make_subspace(a.sig, std::move(span));
}

/// Equality of canonical forms, entrywise within a relative tolerance. The
/// canonical rows can have large entries when the subspace is nearly
/// parallel to a coordinate hyperplane, so the tolerance is scaled by the
/// largest entry magnitude (floored at 1 for well-conditioned rows).
inline bool same_subspace(const SubspaceBasis& a, const SubspaceBasis& b, double tol = 1e-8) {
  if (a.sig != b.sig) throw SignatureMismatch();
  if (a.rows.size() != b.rows.size()) return false;
  double scale = 1.0;
  for (const Matrix* m : {&a.rows, &b.rows})
    for (const auto& row : *m)
      for (double v : row) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < a.rows[i].size(); ++j)
      if (std::abs(a.rows[i][j] - b.rows[i][j]) > tol * scale) return false;
  return true;
}

}  // namespace gasub::oracle
