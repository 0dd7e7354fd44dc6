#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gasub/blade.hpp"
#include "gasub/detail/densemat.hpp"
#include "gasub/linear_operator.hpp"
#include "gasub/multivector.hpp"

namespace gasub {

/// Orthogonal projector onto the subspace of an invertible blade:
/// column j is P_A(e_j) = (e_j | A) A^{-1}.
inline LinearOperator projector_of_blade(const Blade& a, const ToleranceConfig& tol = {}) {
  if (a.is_zero()) throw NotInvertible("zero blade has no projector");
  Blade ainv = blade_inverse(a, tol);
  int n = a.sig().n();
  detail::Mat m(n, n);
  for (int j = 1; j <= n; ++j) {
    Multivector ej = Multivector::basis_vector(a.sig(), j);
    Multivector img = geometric_product(left_contraction(ej, a.mv()), ainv.mv());
    for (const auto& [mask, c] : img.terms()) {
      if (std::popcount(mask) != 1) continue;  // rounding residue on other grades
      m(std::countr_zero(mask), j - 1) = c;
    }
  }
  return LinearOperator(a.sig(), a.sig(), std::move(m));
}

/// Blade correspondence: recover a blade characterizing the image of an
/// idempotent operator of rank t. The candidates are the outermorphism
/// images of all canonical basis t-blades; the one of maximal coefficient
/// norm is returned. Scale and orientation are arbitrary, except t = 0,
/// which yields the scalar 1 exactly.
inline Blade blade_from_projector(const LinearOperator& p, int t, const ToleranceConfig& tol = {}) {
  if (!p.endomorphism()) throw Error("blade_from_projector: operator must be an endomorphism");
  double frob = p.matrix().frobenius();
  if (p.idempotence_defect() > 1e-9 * std::max(1.0, frob))
    throw Error("blade_from_projector: operator is not idempotent");
  Signature sig = p.sig_in();
  int n = sig.n();
  if (t < 0 || t > n) throw RankMismatch("step out of range");
  if (t == 0) return Blade::scalar(sig, 1.0);

  std::vector<Multivector> images;
  images.reserve(n);
  for (int j = 1; j <= n; ++j) images.push_back(p.column(j));

  Multivector best(sig);
  double best_norm = 0.0;
  for (BasisMask mask = 0; mask < (BasisMask{1} << n); ++mask) {
    if (std::popcount(mask) != t) continue;
    Multivector w = Multivector::scalar(sig, 1.0);
    for (BasisMask rest = mask; rest; rest &= rest - 1) {
      w = outer_product(w, images[std::countr_zero(rest)]);
      if (w.empty()) break;
    }
    double nrm = w.coeff_norm();
    if (nrm > best_norm) {
      best_norm = nrm;
      best = w;
    }
  }
  double scale = std::pow(std::max(1.0, p.matrix().max_abs()), t);
  if (best_norm <= zero_threshold(tol, scale))
    throw RankMismatch("no nonzero candidate: step does not match the projector rank");
  return Blade(best, t);
}

namespace detail {

// Linearly independent vectors spanning {x : x ^ A = 0}, computed as the
// null space of the coefficient matrix of the map x -> x ^ A. For a k-blade
// this span has dimension exactly k.
inline std::vector<Multivector> wedge_span(const Multivector& a, int k) {
  int n = a.sig().n();
  // Rows are indexed by the (k+1)-subsets; entry (S u {i}, i) picks up the
  // parity of inserting i into S.
  std::vector<BasisMask> row_masks;
  for (BasisMask mask = 0; mask < (BasisMask{1} << n); ++mask)
    if (std::popcount(mask) == k + 1) row_masks.push_back(mask);
  Mat w(row_masks.size(), n);
  for (std::size_t row = 0; row < row_masks.size(); ++row) {
    BasisMask full = row_masks[row];
    for (BasisMask rest = full; rest; rest &= rest - 1) {
      int i = std::countr_zero(rest);
      BasisMask s = full & ~(BasisMask{1} << i);
      double c = a.coeff(s);
      if (c == 0.0) continue;
      BasisMask below = s & ((BasisMask{1} << i) - 1);
      double sign = (std::popcount(below) & 1) ? -1.0 : 1.0;
      w(row, i) = sign * c;
    }
  }
  std::vector<Multivector> out;
  for (const auto& v : null_space(w, 1e-10)) {
    Multivector x(a.sig());
    for (int i = 0; i < n; ++i)
      if (v[i] != 0.0) x.add_term(BasisMask{1} << i, v[i]);
    out.push_back(std::move(x));
  }
  return out;
}

// Turn a wedge factorization into mutually anticommuting geometric factors,
// preserving the product value. Case analysis on the leading vector:
// an invertible leading vector orthogonalizes the rest; a null leading
// vector either already contracts to zero with the rest or is refactored
// through an invertible 2-blade.
inline std::vector<Multivector> anticommute_factors(std::vector<Multivector> vs) {
  constexpr double kRatioEps = 1e-9;
  if (vs.size() <= 1) return vs;

  auto metric_sq = [](const Multivector& v) { return scalar_part(geometric_product(v, v)); };
  auto coeff_sq = [](const Multivector& v) {
    double n = v.coeff_norm();
    return n * n;
  };
  // Preserve the wedge when moving element j to the front: j adjacent
  // swaps flip the sign j times.
  auto move_front = [&vs](std::size_t j) {
    for (std::size_t i = j; i > 0; --i) std::swap(vs[i - 1], vs[i]);
    if (j & 1) vs[0] = -vs[0];
  };

  std::size_t best = 0;
  double best_ratio = -1.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    double ratio = std::abs(metric_sq(vs[i])) / coeff_sq(vs[i]);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }

  if (best_ratio > kRatioEps) {
    // Invertible leading vector: b_i = a^{-1} (a ^ c_i) removes the
    // a-component of every other factor.
    move_front(best);
    Multivector a = vs[0];
    double a2 = metric_sq(a);
    std::vector<Multivector> rest;
    rest.reserve(vs.size() - 1);
    for (std::size_t i = 1; i < vs.size(); ++i)
      rest.push_back(left_contraction(a / a2, outer_product(a, vs[i])));
    auto tail = anticommute_factors(std::move(rest));
    tail.insert(tail.begin(), std::move(a));
    return tail;
  }

  // All factors are (numerically) null. Look for a partner with a nonzero
  // contraction against the leading vector.
  Multivector a = vs[0];
  double anorm = a.coeff_norm();
  std::size_t partner = 0;
  double best_c = 0.0;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    double c = std::abs(scalar_part(left_contraction(a, vs[i]))) / (anorm * vs[i].coeff_norm());
    if (c > best_c) {
      best_c = c;
      partner = i;
    }
  }

  if (best_c <= kRatioEps) {
    // a ^ C = a C when a contracts to zero with every factor of C.
    std::vector<Multivector> rest(vs.begin() + 1, vs.end());
    auto tail = anticommute_factors(std::move(rest));
    tail.insert(tail.begin(), std::move(a));
    return tail;
  }

  // Null leading vector with a | c1 != 0: the 2-blade a ^ c1 squares to
  // (a | c1)^2, hence factors into two invertible vectors c, d1.
  move_front(partner);
  std::swap(vs[0], vs[1]);
  vs[0] = -vs[0];  // one more adjacent swap puts the partner second again
  a = vs[0];
  Multivector c1 = vs[1];
  Multivector c(a.sig()), d1(a.sig());
  double c1sq = metric_sq(c1);
  if (std::abs(c1sq) / coeff_sq(c1) > kRatioEps) {
    c = c1;
    d1 = -left_contraction(c1 / c1sq, outer_product(c1, a));
  } else {
    // Both null with equal (zero) squares: (a - c1)(a + c1)/2 = a ^ c1.
    c = 0.5 * (a - c1);
    d1 = a + c1;
  }
  Multivector b2 = grade_part(geometric_product(c, d1), 2);
  double b2sq = scalar_part(geometric_product(b2, b2));
  std::vector<Multivector> next;
  next.reserve(vs.size());
  next.push_back(std::move(c));
  next.push_back(std::move(d1));
  for (std::size_t i = 2; i < vs.size(); ++i)
    next.push_back(grade_part(geometric_product(b2 / b2sq, outer_product(b2, vs[i])), 1));
  return anticommute_factors(std::move(next));
}

}  // namespace detail

/// Factor a k-blade (k >= 1) into k mutually anticommuting vectors whose
/// geometric product equals the input.
inline std::vector<Multivector> factor_blade(const Multivector& a, const ToleranceConfig& tol = {}) {
  int k = homogeneous_grade(a, tol);
  if (k < 0 || !is_blade(a, tol)) throw NotABlade();
  if (a.empty() || k == 0) throw NotABlade("factor_blade requires a nonzero blade of step >= 1");
  if (k == 1) return {a};

  std::vector<Multivector> vs = detail::wedge_span(a, k);
  if (static_cast<int>(vs.size()) != k)
    throw NotABlade("span dimension does not match the step");

  // Rescale the first factor so the wedge reproduces the input exactly.
  Multivector w = vs[0];
  for (int i = 1; i < k; ++i) w = outer_product(w, vs[i]);
  BasisMask pivot = 0;
  double pivot_abs = -1.0;
  for (const auto& [mask, coeff] : w.terms())
    if (std::abs(coeff) > pivot_abs) {
      pivot_abs = std::abs(coeff);
      pivot = mask;
    }
  if (pivot_abs <= zero_threshold(tol, a.max_abs_coeff())) throw NotABlade("degenerate span");
  vs[0] = (a.coeff(pivot) / w.coeff(pivot)) * vs[0];

  return detail::anticommute_factors(std::move(vs));
}

/// Cached anticommuting factorization attached to a certified blade.
inline std::vector<Multivector> blade_factors(const Blade& a, const ToleranceConfig& tol = {}) {
  return factor_blade(a.mv(), tol);
}

}  // namespace gasub
