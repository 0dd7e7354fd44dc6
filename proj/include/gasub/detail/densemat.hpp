#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gasub/signature.hpp"

namespace gasub::detail {

/// Minimal dense matrix for the small (n <= 12) systems in the blade engine
/// and the lift module. Row-major.
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  Mat transposed() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
  }
};

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      double v = x(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  Mat z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

inline Mat operator*(double s, const Mat& x) {
  Mat z = x;
  for (double& v : z.a) v *= s;
  return z;
}

// In-place reduced row echelon form with partial pivoting. Returns the pivot
// columns. Entries below tol * (initial max entry) are rejected as pivots.
inline std::vector<std::size_t> rref(Mat& m, double rel_tol = 1e-12) {
  std::vector<std::size_t> pivots;
  double thr = rel_tol * m.max_abs();
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < m.rows; ++i)
      if (std::abs(m(i, col)) > std::abs(m(best, col))) best = i;
    if (std::abs(m(best, col)) <= thr) continue;
    if (best != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(best, j));
    double piv = m(row, col);
    for (std::size_t j = 0; j < m.cols; ++j) m(row, j) /= piv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      double f = m(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Null space basis (columns of the returned matrix span {x : m x = 0}).
inline std::vector<std::vector<double>> null_space(Mat m, double rel_tol = 1e-12) {
  auto pivots = rref(m, rel_tol);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<double>> basis;
  for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<double> v(m.cols, 0.0);
    v[free_col] = 1.0;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inverse via Gauss-Jordan; throws on singular input.
inline Mat inverse(const Mat& m, double rel_tol = 1e-12) {
  if (m.rows != m.cols) throw Error("inverse: matrix not square");
  std::size_t n = m.rows;
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1.0;
  }
  auto pivots = rref(aug, rel_tol);
  if (pivots.size() != n) throw Error("inverse: matrix is singular");
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != i) throw Error("inverse: matrix is singular");
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

}  // namespace gasub::detail
