#pragma once

// Shared helpers for the unit and acceptance suites: deterministic random
// generation of multivectors and blades, and relative comparisons.

#include <algorithm>
#include <random>
#include <vector>

#include "gasub/blade.hpp"
#include "gasub/multivector.hpp"

namespace gasub::testing {

using Rng = std::mt19937;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Multivector random_vector(Rng& rng, Signature sig) {
  Multivector v(sig);
  for (int i = 1; i <= sig.n(); ++i) v.add_term(BasisMask{1} << (i - 1), uniform(rng));
  return v;
}

// A pure null generator, available when the signature is degenerate.
inline Multivector random_null_generator(Rng& rng, Signature sig) {
  int k = uniform_int(rng, 1, sig.r);
  return Multivector::basis_vector(sig, sig.p + sig.q + k);
}

inline Multivector random_multivector(Rng& rng, Signature sig) {
  Multivector m(sig);
  for (BasisMask mask = 0; mask < (BasisMask{1} << sig.n()); ++mask)
    m.add_term(mask, uniform(rng));
  return m;
}

inline Multivector wedge_all(const std::vector<Multivector>& vs, Signature sig) {
  Multivector w = Multivector::scalar(sig, 1.0);
  for (const auto& v : vs) w = outer_product(w, v);
  return w;
}

// Random step-k blade as a wedge of k random vectors; with_nulls mixes in
// pure null generators when the signature is degenerate. Retries until the
// wedge is well away from zero.
inline Blade random_blade(Rng& rng, Signature sig, int step, bool with_nulls = true) {
  if (step == 0) return Blade::scalar(sig, uniform(rng) < 0 ? -1.0 : 1.0);
  for (;;) {
    std::vector<Multivector> vs;
    for (int i = 0; i < step; ++i) {
      bool use_null = with_nulls && sig.r > 0 && uniform(rng) < 0.25;
      vs.push_back(use_null ? random_null_generator(rng, sig) : random_vector(rng, sig));
    }
    Multivector w = wedge_all(vs, sig);
    if (w.coeff_norm() > 0.05) return Blade(w, step);
  }
}

struct BladePair {
  Blade a;
  Blade b;
  int shared;  // dimension of the built-in common factor
};

// A pair of blades sharing exactly `c` factor directions (almost surely),
// with c sampled from the feasible range so that disjoint pairs occur.
inline BladePair random_blade_pair(Rng& rng, Signature sig) {
  int n = sig.n();
  for (;;) {
    int r = uniform_int(rng, 1, n);
    int s = uniform_int(rng, 1, n);
    int cmin = std::max(0, r + s - n);
    int c = uniform_int(rng, cmin, std::min(r, s));
    std::vector<Multivector> shared;
    for (int i = 0; i < c; ++i) {
      bool use_null = sig.r > 0 && uniform(rng) < 0.25;
      shared.push_back(use_null ? random_null_generator(rng, sig) : random_vector(rng, sig));
    }
    auto build = [&](int step) {
      std::vector<Multivector> vs = shared;
      while (static_cast<int>(vs.size()) < step) {
        bool use_null = sig.r > 0 && uniform(rng) < 0.2;
        vs.push_back(use_null ? random_null_generator(rng, sig) : random_vector(rng, sig));
      }
      return wedge_all(vs, sig);
    };
    Multivector wa = build(r), wb = build(s);
    if (wa.coeff_norm() > 0.05 && wb.coeff_norm() > 0.05)
      return BladePair{Blade(wa, r), Blade(wb, s), c};
  }
}

inline bool rel_close(const Multivector& a, const Multivector& b, double tol,
                      double scale_floor = 0.0) {
  double scale = std::max({a.coeff_norm(), b.coeff_norm(), scale_floor});
  if (scale == 0.0) return true;
  return (a - b).coeff_norm() <= tol * scale;
}

// Equality up to a nonzero scale factor.
inline bool proportional(const Multivector& a, const Multivector& b, double tol = 1e-8) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  BasisMask pivot = 0;
  double best = 0.0;
  for (const auto& [mask, c] : b.terms())
    if (std::abs(c) > best) {
      best = std::abs(c);
      pivot = mask;
    }
  double cb = b.coeff(pivot), ca = a.coeff(pivot);
  if (ca == 0.0) return false;
  return rel_close(a, (ca / cb) * b, tol);
}

}  // namespace gasub::testing
