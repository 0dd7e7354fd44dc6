#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "gasub/blade.hpp"
#include "gasub/detail/densemat.hpp"
#include "gasub/linear_operator.hpp"

namespace gasub {

/// An invertible linear map between the vector spaces of two algebras,
/// applied to multivectors by outermorphism. For an embedding lift the
/// target is larger and vmap_inverse is the pseudoinverse, valid on the
/// image subspace.
class Lift {
 public:
  Lift(LinearOperator vmap, LinearOperator vmap_inverse)
      : vmap_(std::move(vmap)), inv_(std::move(vmap_inverse)) {
    if (vmap_.sig_in() != inv_.sig_out() || vmap_.sig_out() != inv_.sig_in())
      throw Error("lift: inverse map shape mismatch");
  }

  const Signature& sig_in() const { return vmap_.sig_in(); }
  const Signature& sig_out() const { return vmap_.sig_out(); }
  const LinearOperator& vmap() const { return vmap_; }
  const LinearOperator& vmap_inverse() const { return inv_; }

 private:
  LinearOperator vmap_;
  LinearOperator inv_;
};

/// The canonical lift to the Euclidean algebra of the same dimension:
/// generator i maps to generator i.
inline Lift canonical_lift(Signature sig) {
  Signature out{sig.n(), 0, 0};
  detail::Mat id = detail::Mat::identity(sig.n());
  return Lift(LinearOperator(sig, out, id), LinearOperator(out, sig, id));
}

/// A lift defined by an arbitrary invertible generator matrix into the
/// Euclidean algebra of the same dimension.
inline Lift lift_from_matrix(Signature sig, detail::Mat m) {
  Signature out{sig.n(), 0, 0};
  detail::Mat inv = detail::inverse(m);
  return Lift(LinearOperator(sig, out, std::move(m)), LinearOperator(out, sig, std::move(inv)));
}

/// The embedding lift of R(p,q,r) into R(p+r, q+r, 0):
/// p_i -> e_i, q_j -> f_j, r_k -> e_{p+k} + f_{q+k}.
/// Its outermorphism is an algebra isomorphism onto a subalgebra.
inline Lift embedding_lift(Signature sig) {
  int p = sig.p, q = sig.q, r = sig.r;
  Signature out{p + r, q + r, 0};
  int n_in = sig.n(), n_out = out.n();
  detail::Mat m(n_out, n_in);
  for (int i = 0; i < p; ++i) m(i, i) = 1.0;                        // p_i -> e_i
  for (int j = 0; j < q; ++j) m(p + r + j, p + j) = 1.0;            // q_j -> f_j
  for (int k = 0; k < r; ++k) {
    m(p + k, p + q + k) = 1.0;          // e_{p+k}
    m(p + r + q + k, p + q + k) = 1.0;  // f_{q+k}
  }
  // Left inverse (pseudoinverse restricted to the image): p_i and q_j
  // come straight back; r_k is read off either null coordinate pair.
  detail::Mat inv(n_in, n_out);
  for (int i = 0; i < p; ++i) inv(i, i) = 1.0;
  for (int j = 0; j < q; ++j) inv(p + j, p + r + j) = 1.0;
  for (int k = 0; k < r; ++k) {
    inv(p + q + k, p + k) = 0.5;
    inv(p + q + k, p + r + q + k) = 0.5;
  }
  return Lift(LinearOperator(sig, out, std::move(m)), LinearOperator(out, sig, std::move(inv)));
}

/// Transport a multivector by the outermorphism of the generator map.
inline Multivector lift_forward(const Lift& l, const Multivector& a) {
  return outermorphism_apply(l.vmap(), a);
}

inline Blade lift_forward(const Lift& l, const Blade& a) {
  return Blade(lift_forward(l, a.mv()), a.step());
}

/// Inverse transport. For an embedding lift the preimage candidate is
/// produced by the pseudoinverse and then verified: the round trip must
/// land back on the operand, otherwise it was not in the image subalgebra.
inline Multivector lift_inverse(const Lift& l, const Multivector& a,
                                const ToleranceConfig& tol = {}) {
  if (a.sig() != l.sig_out()) throw SignatureMismatch();
  Multivector x = outermorphism_apply(l.vmap_inverse(), a);
  if (l.sig_in().n() != l.sig_out().n()) {
    Multivector back = lift_forward(l, x);
    double scale = std::max(a.max_abs_coeff(), back.max_abs_coeff());
    if ((back - a).max_abs_coeff() > std::max(1e-8 * scale, tol.abs_eps))
      throw NotInImage();
  }
  return x;
}

inline Blade lift_inverse(const Lift& l, const Blade& a, const ToleranceConfig& tol = {}) {
  return Blade(lift_inverse(l, a.mv(), tol), a.step());
}

}  // namespace gasub
