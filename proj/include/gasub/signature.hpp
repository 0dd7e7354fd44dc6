#pragma once

#include <stdexcept>
#include <string>

namespace gasub {

inline constexpr int kMaxDim = 12; // bitmask width bound

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignatureMismatch : Error {
  SignatureMismatch() : Error("operands belong to different algebras") {}
};
struct NotInvertible : Error {
  explicit NotInvertible(const std::string& what = "blade has no inverse (null square)")
      : Error(what) {}
};
struct NotABlade : Error {
  explicit NotABlade(const std::string& what = "multivector is not a blade") : Error(what) {}
};
struct NotASubspace : Error {
  explicit NotASubspace(const std::string& what = "operand does not contain the divisor subspace")
      : Error(what) {}
};
struct RankMismatch : Error {
  explicit RankMismatch(const std::string& what = "requested step does not match operator rank")
      : Error(what) {}
};
struct NotInImage : Error {
  explicit NotInImage(const std::string& what = "multivector lies outside the lift image")
      : Error(what) {}
};
struct EmptyInput : Error {
  explicit EmptyInput(const std::string& what = "zero blade has no spanning basis") : Error(what) {}
};

/// Metric signature (p, q, r): counts of generators squaring to +1, -1, 0.
struct Signature {
  int p = 0;
  int q = 0;
  int r = 0;

  constexpr int n() const { return p + q + r; }
  constexpr bool euclidean() const { return q == 0 && r == 0; }
  constexpr bool degenerate() const { return r > 0; }

  // Generator indices are 1-based and positional: 1..p square to +1,
  // p+1..p+q to -1, p+q+1..n to 0.
  constexpr double generator_square(int i) const {
    if (i <= p) return 1.0;
    if (i <= p + q) return -1.0;
    return 0.0;
  }

  friend constexpr bool operator==(const Signature&, const Signature&) = default;
};

inline Signature make_signature(int p, int q, int r) {
  if (p < 0 || q < 0 || r < 0 || p + q + r > kMaxDim)
    throw Error("signature out of range: need p,q,r >= 0 and p+q+r <= 12");
  return Signature{p, q, r};
}

/// Zero-detection thresholds. A coefficient is treated as zero when its
/// magnitude is at most max(abs_eps, rel_eps * scale of the operand).
struct ToleranceConfig {
  double rel_eps = 1e-10;
  double abs_eps = 1e-14;
};

inline double zero_threshold(const ToleranceConfig& tol, double scale) {
  double t = tol.rel_eps * scale;
  return t > tol.abs_eps ? t : tol.abs_eps;
}

}  // namespace gasub
