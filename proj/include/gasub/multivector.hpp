#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "gasub/signature.hpp"

namespace gasub {

using BasisMask = std::uint32_t;

// Sign from sorting the concatenation of two ascending generator lists
// (masks a, b) into ascending order: parity of the transposition count.
inline int reorder_sign(BasisMask a, BasisMask b) {
  int swaps = 0;
  a >>= 1;
  while (a) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

// Full factor for the geometric product of basis blades e_a * e_b:
// reordering sign times the metric contraction of repeated generators.
// A repeated null generator annihilates the term.
inline double basis_product_factor(const Signature& sig, BasisMask a, BasisMask b) {
  double f = reorder_sign(a, b);
  BasisMask common = a & b;
  while (common) {
    int i = std::countr_zero(common);
    f *= sig.generator_square(i + 1);
    if (f == 0.0) return 0.0;
    common &= common - 1;
  }
  return f;
}

/// Sparse multivector over a fixed signature: canonical ascending basis
/// index sets encoded as bitmasks, mapped to real coefficients.
/// Exact-zero coefficients are never stored. Immutable in spirit: all
/// operations return new values.
class Multivector {
 public:
  explicit Multivector(Signature sig) : sig_(sig) {}

  static Multivector scalar(Signature sig, double v) {
    Multivector m(sig);
    m.add_term(0, v);
    return m;
  }

  static Multivector basis_vector(Signature sig, int i) {
    if (i < 1 || i > sig.n()) throw Error("basis index out of range");
    Multivector m(sig);
    m.add_term(BasisMask{1} << (i - 1), 1.0);
    return m;
  }

  static Multivector basis_blade(Signature sig, BasisMask mask, double coeff = 1.0) {
    if (mask >= (BasisMask{1} << sig.n())) throw Error("basis mask out of range");
    Multivector m(sig);
    m.add_term(mask, coeff);
    return m;
  }

  const Signature& sig() const { return sig_; }
  const std::map<BasisMask, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  double coeff(BasisMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? 0.0 : it->second;
  }

  void add_term(BasisMask mask, double v) {
    auto [it, fresh] = terms_.try_emplace(mask, v);
    if (!fresh) it->second += v;
    if (it->second == 0.0) terms_.erase(it);
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  double coeff_norm() const {  // Euclidean norm of the coefficient vector
    double s = 0.0;
    for (const auto& [mask, c] : terms_) s += c * c;
    return std::sqrt(s);
  }

  Multivector operator-() const {
    Multivector out(sig_);
    for (const auto& [mask, c] : terms_) out.terms_[mask] = -c;
    return out;
  }

  friend Multivector operator+(const Multivector& a, const Multivector& b) {
    if (a.sig_ != b.sig_) throw SignatureMismatch();
    Multivector out = a;
    for (const auto& [mask, c] : b.terms_) out.add_term(mask, c);
    return out;
  }

  friend Multivector operator-(const Multivector& a, const Multivector& b) {
    if (a.sig_ != b.sig_) throw SignatureMismatch();
    Multivector out = a;
    for (const auto& [mask, c] : b.terms_) out.add_term(mask, -c);
    return out;
  }

  friend Multivector operator*(double s, const Multivector& a) {
    Multivector out(a.sig_);
    if (s == 0.0) return out;
    for (const auto& [mask, c] : a.terms_) out.terms_[mask] = s * c;
    return out;
  }
  friend Multivector operator*(const Multivector& a, double s) { return s * a; }
  friend Multivector operator/(const Multivector& a, double s) { return (1.0 / s) * a; }

 private:
  Signature sig_;
  std::map<BasisMask, double> terms_;
};

inline Multivector geometric_product(const Multivector& a, const Multivector& b) {
  if (a.sig() != b.sig()) throw SignatureMismatch();
  Multivector out(a.sig());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      double f = basis_product_factor(a.sig(), ma, mb);
      if (f != 0.0) out.add_term(ma ^ mb, f * ca * cb);
    }
  return out;
}

// Grade-raising part of the geometric product: basis terms contribute only
// when their index sets are disjoint, so no metric factor appears.
inline Multivector outer_product(const Multivector& a, const Multivector& b) {
  if (a.sig() != b.sig()) throw SignatureMismatch();
  Multivector out(a.sig());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      out.add_term(ma | mb, reorder_sign(ma, mb) * ca * cb);
    }
  return out;
}

// Left contraction <A B>_{s-r} per grade pair: a basis term survives exactly
// when the left index set is contained in the right one.
inline Multivector left_contraction(const Multivector& a, const Multivector& b) {
  if (a.sig() != b.sig()) throw SignatureMismatch();
  Multivector out(a.sig());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & ~mb) continue;
      double f = basis_product_factor(a.sig(), ma, mb);
      if (f != 0.0) out.add_term(ma ^ mb, f * ca * cb);
    }
  return out;
}

inline Multivector grade_part(const Multivector& a, int k) {
  Multivector out(a.sig());
  if (k < 0 || k > a.sig().n()) return out;
  for (const auto& [mask, c] : a.terms())
    if (std::popcount(mask) == k) out.add_term(mask, c);
  return out;
}

inline Multivector reverse(const Multivector& a) {
  Multivector out(a.sig());
  for (const auto& [mask, c] : a.terms()) {
    int k = std::popcount(mask);
    double sign = (k * (k - 1) / 2) % 2 ? -1.0 : 1.0;
    out.add_term(mask, sign * c);
  }
  return out;
}

inline double scalar_part(const Multivector& a) { return a.coeff(0); }

inline bool approx_zero(const Multivector& a, double scale, const ToleranceConfig& tol = {}) {
  return a.max_abs_coeff() <= zero_threshold(tol, scale);
}

// Relative distance of two multivectors against the larger operand scale
// (or an explicit scale floor supplied by the caller).
inline double rel_distance(const Multivector& a, const Multivector& b, double scale_floor = 0.0) {
  double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), scale_floor});
  if (scale == 0.0) return 0.0;
  return (a - b).max_abs_coeff() / scale;
}

// Highest grade holding a coefficient above the zero threshold; -1 if none.
inline int max_nonzero_grade(const Multivector& a, const ToleranceConfig& tol = {}) {
  double thr = zero_threshold(tol, a.max_abs_coeff());
  int best = -1;
  for (const auto& [mask, c] : a.terms())
    if (std::abs(c) > thr) best = std::max(best, std::popcount(mask));
  return best;
}

// Grade of the dominant coefficient if all other grades are below the zero
// threshold; -1 when the multivector is not grade-homogeneous. Zero counts
// as homogeneous of grade 0.
inline int homogeneous_grade(const Multivector& a, const ToleranceConfig& tol = {}) {
  double scale = a.max_abs_coeff();
  if (scale == 0.0) return 0;
  double thr = zero_threshold(tol, scale);
  int grade = -1;
  for (const auto& [mask, c] : a.terms())
    if (std::abs(c) == scale) {
      grade = std::popcount(mask);
      break;
    }
  for (const auto& [mask, c] : a.terms())
    if (std::popcount(mask) != grade && std::abs(c) > thr) return -1;
  return grade;
}

}  // namespace gasub
