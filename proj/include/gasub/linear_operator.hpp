#pragma once

#include <utility>
#include <vector>

#include "gasub/blade.hpp"
#include "gasub/detail/densemat.hpp"
#include "gasub/multivector.hpp"

namespace gasub {

/// A real linear map on generators, possibly between different algebras.
/// matrix is n_out x n_in; column j holds the coordinates of the image of
/// generator j.
class LinearOperator {
 public:
  LinearOperator(Signature sig_in, Signature sig_out, detail::Mat matrix)
      : sig_in_(sig_in), sig_out_(sig_out), matrix_(std::move(matrix)) {
    if (matrix_.rows != static_cast<std::size_t>(sig_out_.n()) ||
        matrix_.cols != static_cast<std::size_t>(sig_in_.n()))
      throw Error("operator shape does not match signatures");
  }

  static LinearOperator identity(Signature sig) {
    return LinearOperator(sig, sig, detail::Mat::identity(sig.n()));
  }

  static LinearOperator zero(Signature sig) {
    return LinearOperator(sig, sig, detail::Mat(sig.n(), sig.n()));
  }

  const Signature& sig_in() const { return sig_in_; }
  const Signature& sig_out() const { return sig_out_; }
  const detail::Mat& matrix() const { return matrix_; }
  bool endomorphism() const { return sig_in_ == sig_out_; }

  /// Image of generator j (1-based), as a grade-1 multivector of sig_out.
  Multivector column(int j) const {
    Multivector v(sig_out_);
    for (int i = 0; i < sig_out_.n(); ++i) {
      double c = matrix_(i, j - 1);
      if (c != 0.0) v.add_term(BasisMask{1} << i, c);
    }
    return v;
  }

  /// Apply to a grade-1 multivector.
  Multivector apply_vector(const Multivector& x) const {
    if (x.sig() != sig_in_) throw SignatureMismatch();
    Multivector out(sig_out_);
    for (const auto& [mask, c] : x.terms()) {
      if (std::popcount(mask) != 1) throw Error("apply_vector: operand is not a vector");
      int j = std::countr_zero(mask) + 1;
      out = out + c * column(j);
    }
    return out;
  }

  double idempotence_defect() const {
    if (!endomorphism()) throw Error("idempotence is defined for endomorphisms only");
    return (matrix_ * matrix_ - matrix_).frobenius();
  }

  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
    if (a.sig_in_ != b.sig_in_ || a.sig_out_ != b.sig_out_) throw SignatureMismatch();
    return LinearOperator(a.sig_in_, a.sig_out_, a.matrix_ + b.matrix_);
  }
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
    if (a.sig_in_ != b.sig_in_ || a.sig_out_ != b.sig_out_) throw SignatureMismatch();
    return LinearOperator(a.sig_in_, a.sig_out_, a.matrix_ - b.matrix_);
  }
  friend LinearOperator operator*(double s, const LinearOperator& a) {
    return LinearOperator(a.sig_in_, a.sig_out_, s * a.matrix_);
  }

 private:
  Signature sig_in_;
  Signature sig_out_;
  detail::Mat matrix_;
};

/// Outermorphism extension: identity on scalars; each basis blade
/// {i1 < ... < ik} maps to f(e_i1) ^ ... ^ f(e_ik); extended linearly.
inline Multivector outermorphism_apply(const LinearOperator& f, const Multivector& a) {
  if (a.sig() != f.sig_in()) throw SignatureMismatch();
  std::vector<Multivector> images;
  images.reserve(f.sig_in().n());
  for (int j = 1; j <= f.sig_in().n(); ++j) images.push_back(f.column(j));

  Multivector out(f.sig_out());
  for (const auto& [mask, c] : a.terms()) {
    Multivector w = Multivector::scalar(f.sig_out(), c);
    for (BasisMask rest = mask; rest; rest &= rest - 1) {
      int i = std::countr_zero(rest);
      w = outer_product(w, images[i]);
      if (w.empty()) break;
    }
    out = out + w;
  }
  return out;
}

}  // namespace gasub
