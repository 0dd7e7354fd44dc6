#pragma once

#include <cmath>
#include <utility>

#include "gasub/multivector.hpp"

namespace gasub {

/// A multivector certified grade-homogeneous and factorizable, with its step
/// cached. The zero multivector is a valid blade of any step; it is stored
/// with step 0 and answers is_zero().
class Blade {
 public:
  explicit Blade(Signature sig) : mv_(sig), step_(0) {}
  Blade(Multivector mv, int step) : mv_(std::move(mv)), step_(step) {}

  const Multivector& mv() const { return mv_; }
  const Signature& sig() const { return mv_.sig(); }
  int step() const { return step_; }
  bool is_zero() const { return mv_.empty(); }

  static Blade zero(Signature sig) { return Blade(sig); }
  static Blade scalar(Signature sig, double v) { return Blade(Multivector::scalar(sig, v), 0); }

 private:
  Multivector mv_;
  int step_;
};

// Reinterpret the coefficients in the Euclidean algebra of the same
// dimension. This is the canonical LIFT transport: generator i maps to
// generator i, so the term map is unchanged.
inline Multivector to_euclidean(const Multivector& a) {
  Signature esig{a.sig().n(), 0, 0};
  Multivector out(esig);
  for (const auto& [mask, c] : a.terms()) out.add_term(mask, c);
  return out;
}

/// Blade decision procedure: grade-homogeneous and, after transport to the
/// Euclidean algebra of the same dimension, the Pluecker condition
/// (Y | A) ^ A = 0 holds for every basis (k-1)-blade Y. Grades 0 and 1 are
/// blades unconditionally; so is the zero multivector.
inline bool is_blade(const Multivector& a, const ToleranceConfig& tol = {}) {
  if (a.empty()) return true;
  int k = homogeneous_grade(a, tol);
  if (k < 0) return false;
  if (k <= 1) return true;
  Multivector ae = to_euclidean(a);
  int n = ae.sig().n();
  double scale = ae.max_abs_coeff();
  double thr = zero_threshold(tol, scale * scale);
  for (BasisMask mask = 0; mask < (BasisMask{1} << n); ++mask) {
    if (std::popcount(mask) != k - 1) continue;
    Multivector y = Multivector::basis_blade(ae.sig(), mask);
    Multivector w = left_contraction(y, ae);
    if (outer_product(w, ae).max_abs_coeff() > thr) return false;
  }
  return true;
}

/// Certify a multivector as a blade; throws NotABlade otherwise.
inline Blade make_blade(const Multivector& a, const ToleranceConfig& tol = {}) {
  if (a.empty()) return Blade::zero(a.sig());
  int k = homogeneous_grade(a, tol);
  if (k < 0) throw NotABlade("multivector is not grade-homogeneous");
  if (!is_blade(a, tol)) throw NotABlade();
  return Blade(a, k);
}

/// Geometric square of a blade, a scalar.
inline double blade_square(const Blade& a) { return scalar_part(geometric_product(a.mv(), a.mv())); }

inline bool blade_invertible(const Blade& a, const ToleranceConfig& tol = {}) {
  if (a.is_zero()) return false;
  double n2 = a.mv().coeff_norm();
  return std::abs(blade_square(a)) > zero_threshold(tol, n2 * n2);
}

/// Inverse of a blade: the blade divided by its (scalar) square.
/// Null blades have none; that failure is the trigger for the LIFT path.
inline Blade blade_inverse(const Blade& a, const ToleranceConfig& tol = {}) {
  if (a.is_zero()) throw NotInvertible("zero blade has no inverse");
  double sq = blade_square(a);
  double n2 = a.mv().coeff_norm();
  if (std::abs(sq) <= zero_threshold(tol, n2 * n2)) throw NotInvertible();
  return Blade(a.mv() / sq, a.step());
}

/// The preferred pseudoscalar: product of all n generators ascending,
/// coefficient +1.
inline Blade pseudoscalar(Signature sig) {
  int n = sig.n();
  return Blade(Multivector::basis_blade(sig, (BasisMask{1} << n) - 1), n);
}

}  // namespace gasub
