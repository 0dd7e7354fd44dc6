#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "gasub/blade.hpp"
#include "gasub/blade_engine.hpp"
#include "gasub/lift.hpp"
#include "gasub/multivector.hpp"

namespace gasub {

namespace detail {

// Highest-step portion of the geometric product of two blades.
inline Blade delta_direct(const Blade& a, const Blade& b, const ToleranceConfig& tol) {
  Multivector prod = geometric_product(a.mv(), b.mv());
  int k = max_nonzero_grade(prod, tol);
  if (k < 0) throw Error("delta product: geometric product vanished");
  return Blade(grade_part(prod, k), k);
}

// Inner division without the subset check, for internal callers that have
// the containment by construction. Value is B^{-1} A.
inline Blade inner_division_direct(const Blade& a, const Blade& b, const ToleranceConfig& tol) {
  Blade binv = blade_inverse(b, tol);
  Multivector q = geometric_product(binv.mv(), a.mv());
  int k = a.step() - b.step();
  return Blade(grade_part(q, k), k);
}

// Euclidean meet via the projector combination
// P = (P_B - P_delta + P_{delta B^{-1}}) / 2 and the blade correspondence
// at step (r + s - q) / 2.
inline Blade meet_euclidean(const Blade& a, const Blade& b, const ToleranceConfig& tol) {
  Blade d = delta_direct(a, b, tol);
  int r = a.step(), s = b.step(), q = d.step();
  if ((r + s - q) % 2 != 0 || r + s - q < 0)
    throw Error("meet: inconsistent delta step (operands may not be blades)");
  int t = (r + s - q) / 2;
  if (t == 0) return Blade::scalar(a.sig(), 1.0);

  Blade binv = blade_inverse(b, tol);
  Blade m(grade_part(geometric_product(d.mv(), binv.mv()), r), r);
  LinearOperator p =
      0.5 * (projector_of_blade(b, tol) - projector_of_blade(d, tol) + projector_of_blade(m, tol));
  return blade_from_projector(p, t, tol);
}

inline Blade join_euclidean(const Blade& a, const Blade& b, const ToleranceConfig& tol) {
  Blade m = meet_euclidean(a, b, tol);
  // Composed form A ^ (B \ (A meet B)): the disjoint case divides by the
  // exact scalar 1 and reduces to the outer product.
  Blade bdiv = inner_division_direct(b, m, tol);
  int k = a.step() + bdiv.step();
  return Blade(grade_part(outer_product(a.mv(), bdiv.mv()), k), k);
}

inline void require_same_sig(const Blade& a, const Blade& b) {
  if (a.sig() != b.sig()) throw SignatureMismatch();
}

}  // namespace detail

/// Meet (largest common subspace) computed through an explicit lift to a
/// Euclidean algebra. Disjoint operands give exactly the scalar 1; other
/// results carry an arbitrary scale and orientation.
inline Blade meet(const Blade& a, const Blade& b, const Lift& l, const ToleranceConfig& tol = {}) {
  detail::require_same_sig(a, b);
  if (a.is_zero() || b.is_zero()) return Blade::zero(a.sig());
  if (!l.sig_out().euclidean()) throw Error("meet: lift target must be Euclidean");
  Blade fa = lift_forward(l, a), fb = lift_forward(l, b);
  Blade fm = detail::meet_euclidean(fa, fb, tol);
  return lift_inverse(l, fm, tol);
}

inline Blade meet(const Blade& a, const Blade& b, const ToleranceConfig& tol = {}) {
  detail::require_same_sig(a, b);
  if (a.is_zero() || b.is_zero()) return Blade::zero(a.sig());
  if (a.sig().euclidean()) return detail::meet_euclidean(a, b, tol);
  return meet(a, b, canonical_lift(a.sig()), tol);
}

/// Join (smallest common superspace); reduces exactly to A ^ B when the
/// operands are disjoint.
inline Blade join(const Blade& a, const Blade& b, const Lift& l, const ToleranceConfig& tol = {}) {
  detail::require_same_sig(a, b);
  if (a.is_zero() || b.is_zero()) return Blade::zero(a.sig());
  if (!l.sig_out().euclidean()) throw Error("join: lift target must be Euclidean");
  Blade fa = lift_forward(l, a), fb = lift_forward(l, b);
  Blade fj = detail::join_euclidean(fa, fb, tol);
  return lift_inverse(l, fj, tol);
}

inline Blade join(const Blade& a, const Blade& b, const ToleranceConfig& tol = {}) {
  detail::require_same_sig(a, b);
  if (a.is_zero() || b.is_zero()) return Blade::zero(a.sig());
  if (a.sig().euclidean()) return detail::join_euclidean(a, b, tol);
  return join(a, b, canonical_lift(a.sig()), tol);
}

/// Projector-form join, kept as an independent cross-check of the composed
/// form (Euclidean signatures).
inline Blade join_via_projector(const Blade& a, const Blade& b, const ToleranceConfig& tol = {}) {
  detail::require_same_sig(a, b);
  if (a.is_zero() || b.is_zero()) return Blade::zero(a.sig());
  if (!a.sig().euclidean()) throw Error("join_via_projector: Euclidean signatures only");
  Blade d = detail::delta_direct(a, b, tol);
  int r = a.step(), s = b.step(), q = d.step();
  Blade binv = blade_inverse(b, tol);
  Blade m(grade_part(geometric_product(d.mv(), binv.mv()), r), r);
  LinearOperator p =
      0.5 * (projector_of_blade(m, tol) + projector_of_blade(d, tol) + projector_of_blade(b, tol));
  return blade_from_projector(p, (r + s + q) / 2, tol);
}

/// Inner division A \ B = B^{-1} A, a blade characterizing the orthogonal
/// complement of B inside A. Requires subspace(B) within subspace(A).
/// A null divisor routes through the embedding lift:
/// f^{-1}( f(A) meet (f(B) I) ).
inline Blade inner_division(const Blade& a, const Blade& b, const ToleranceConfig& tol = {}) {
  detail::require_same_sig(a, b);
  if (a.is_zero() || b.is_zero()) return Blade::zero(a.sig());
  if (b.step() > 0) {
    for (const Multivector& f : factor_blade(b.mv(), tol)) {
      double scale = f.max_abs_coeff() * a.mv().max_abs_coeff();
      if (outer_product(f, a.mv()).max_abs_coeff() > std::max(1e-8 * scale, tol.abs_eps))
        throw NotASubspace();
    }
  }
  if (blade_invertible(b, tol)) return detail::inner_division_direct(a, b, tol);

  Lift f = embedding_lift(a.sig());
  Blade i = pseudoscalar(f.sig_out());
  Blade fa = lift_forward(f, a), fb = lift_forward(f, b);
  Multivector dual = geometric_product(fb.mv(), i.mv());
  Blade result = meet(fa, Blade(dual, i.step() - fb.step()), tol);
  return lift_inverse(f, result, tol);
}

/// Delta product: the blade characterizing the symmetric difference
/// subspace. Direct form (highest step of AB) whenever the meet is
/// invertible; otherwise the embedding-lift form
/// f^{-1}( (f(A) join f(B)) meet ((f(A) meet f(B)) I) ).
inline Blade delta_product(const Blade& a, const Blade& b, const ToleranceConfig& tol = {}) {
  detail::require_same_sig(a, b);
  if (a.is_zero() || b.is_zero()) return Blade::zero(a.sig());
  if (a.sig().euclidean()) return detail::delta_direct(a, b, tol);

  Blade m = meet(a, b, tol);
  if (blade_invertible(m, tol)) return detail::delta_direct(a, b, tol);

  Lift f = embedding_lift(a.sig());
  Blade i = pseudoscalar(f.sig_out());
  Blade fa = lift_forward(f, a), fb = lift_forward(f, b);
  Blade fj = join(fa, fb, tol);
  Blade fm = meet(fa, fb, tol);
  Multivector dual = geometric_product(fm.mv(), i.mv());
  Blade result = meet(fj, Blade(dual, i.step() - fm.step()), tol);
  return lift_inverse(f, result, tol);
}

/// Meet of the prior literature: (A I) | B. Linear in both arguments; zero
/// whenever the operands fail to span the pseudoscalar.
inline Multivector linear_meet(const Multivector& a, const Multivector& b, const Blade& i) {
  return left_contraction(geometric_product(a, i.mv()), b);
}

inline Multivector linear_meet(const Multivector& a, const Multivector& b) {
  return linear_meet(a, b, pseudoscalar(a.sig()));
}

/// Join of the prior literature: A ^ B; zero whenever the subspaces
/// intersect nontrivially.
inline Multivector linear_join(const Multivector& a, const Multivector& b) {
  return outer_product(a, b);
}

/// Display normalization: unit coefficient norm, first canonical
/// coefficient positive. Raw operation results are never normalized
/// internally, so the determinate disjoint-case scales survive.
inline Multivector normalize(const Multivector& a) {
  if (a.empty()) return a;
  double nrm = a.coeff_norm();
  // First term in (grade, ascending index set) order decides the sign.
  auto index_less = [](BasisMask x, BasisMask y) {
    int gx = std::popcount(x), gy = std::popcount(y);
    if (gx != gy) return gx < gy;
    while (x && y) {
      int ix = std::countr_zero(x), iy = std::countr_zero(y);
      if (ix != iy) return ix < iy;
      x &= x - 1;
      y &= y - 1;
    }
    return false;
  };
  BasisMask first = a.terms().begin()->first;
  double lead = a.terms().begin()->second;
  for (const auto& [mask, c] : a.terms())
    if (index_less(mask, first)) {
      first = mask;
      lead = c;
    }
  double s = (lead < 0 ? -1.0 : 1.0) * nrm;
  return a / s;
}

inline Blade normalize(const Blade& a) { return Blade(normalize(a.mv()), a.step()); }

}  // namespace gasub
