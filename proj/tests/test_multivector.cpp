#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "gasub/blade.hpp"
#include "gasub/multivector.hpp"
#include "support.hpp"

using namespace gasub;
using gasub::testing::Rng;
using gasub::testing::random_multivector;
using gasub::testing::random_vector;
using gasub::testing::rel_close;

namespace {

const Signature r300{3, 0, 0};
const Signature r001{0, 0, 1};

Multivector e(Signature sig, int i) { return Multivector::basis_vector(sig, i); }

// Independent sign-table oracle: multiply basis blades given as generator
// index sequences, by explicit bubble sort with metric contraction of
// adjacent equal generators. Shares nothing with the kernel's bitmask code.
struct SeqProduct {
  std::vector<int> indices;
  double factor;
};

SeqProduct seq_product(Signature sig, std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  double factor = 1.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      if (a[i] > a[i + 1]) {
        std::swap(a[i], a[i + 1]);
        factor = -factor;
        changed = true;
      } else if (a[i] == a[i + 1]) {
        factor *= sig.generator_square(a[i]);
        a.erase(a.begin() + i, a.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return {a, factor};
}

Multivector from_indices(Signature sig, const std::vector<int>& idx, double c) {
  BasisMask mask = 0;
  for (int i : idx) mask |= BasisMask{1} << (i - 1);
  return Multivector::basis_blade(sig, mask, c);
}

}  // namespace

TEST_CASE("geometric product on generators") {
  CHECK(scalar_part(geometric_product(e(r300, 1), e(r300, 1))) == 1.0);
  CHECK(geometric_product(e(r001, 1), e(r001, 1)).empty());  // null generator squares to 0

  // (e1 e2)(e2 e3) = e1 e3, cross-checked against the permutation oracle
  Multivector e12 = Multivector::basis_blade(r300, 0b011);
  Multivector e23 = Multivector::basis_blade(r300, 0b110);
  Multivector got = geometric_product(e12, e23);
  SeqProduct expect = seq_product(r300, {1, 2}, {2, 3});
  CHECK(rel_close(got, from_indices(r300, expect.indices, expect.factor), 1e-15));
}

TEST_CASE("geometric product matches the permutation-parity oracle on basis blades") {
  Signature sigs[] = {r300, {1, 1, 0}, {1, 1, 1}, {2, 0, 2}};
  for (Signature sig : sigs) {
    int n = sig.n();
    for (BasisMask ma = 0; ma < (BasisMask{1} << n); ++ma)
      for (BasisMask mb = 0; mb < (BasisMask{1} << n); ++mb) {
        std::vector<int> ia, ib;
        for (int i = 0; i < n; ++i) {
          if (ma & (BasisMask{1} << i)) ia.push_back(i + 1);
          if (mb & (BasisMask{1} << i)) ib.push_back(i + 1);
        }
        Multivector got = geometric_product(Multivector::basis_blade(sig, ma),
                                            Multivector::basis_blade(sig, mb));
        SeqProduct ex = seq_product(sig, ia, ib);
        Multivector want =
            ex.factor == 0.0 ? Multivector(sig) : from_indices(sig, ex.indices, ex.factor);
        CHECK(rel_close(got, want, 1e-15));
      }
  }
}

TEST_CASE("signature mismatch is rejected") {
  CHECK_THROWS_AS(geometric_product(e(r300, 1), e(r001, 1)), SignatureMismatch);
  CHECK_THROWS_AS(outer_product(e(r300, 1), e(r001, 1)), SignatureMismatch);
  CHECK_THROWS_AS(left_contraction(e(r300, 1), e(r001, 1)), SignatureMismatch);
}

TEST_CASE("outer product") {
  Multivector e12 = Multivector::basis_blade(r300, 0b011);
  CHECK(rel_close(outer_product(e(r300, 1), e(r300, 2)), e12, 1e-15));
  CHECK(outer_product(e(r300, 1), e(r300, 1)).empty());
  // bilinear expansion: (e1+e2) ^ e2 = e1^e2 + e2^e2 = e12
  CHECK(rel_close(outer_product(e(r300, 1) + e(r300, 2), e(r300, 2)), e12, 1e-15));
}

TEST_CASE("left contraction") {
  Multivector e12 = Multivector::basis_blade(r300, 0b011);
  CHECK(rel_close(left_contraction(e(r300, 1), e12), e(r300, 2), 1e-15));
  Rng rng(7);
  Multivector a = random_multivector(rng, r300);
  CHECK(rel_close(left_contraction(Multivector::scalar(r300, 1.0), a), a, 1e-15));
  // negative target grade
  CHECK(left_contraction(e(r300, 1), Multivector::scalar(r300, 5.0)).empty());
}

TEST_CASE("contraction inner-product expansion on factored blades") {
  // a | (c1 ^ ... ^ ck) = sum (-1)^{i+1} (a | c_i) c1 ^ ... ^ (c_i omitted) ^ ... ^ ck
  Rng rng(11);
  Signature sigs[] = {r300, {2, 2, 0}, {2, 0, 2}, {4, 0, 0}};
  for (Signature sig : sigs) {
    for (int rep = 0; rep < 50; ++rep) {
      int k = gasub::testing::uniform_int(rng, 1, sig.n());
      Multivector a = random_vector(rng, sig);
      std::vector<Multivector> cs;
      for (int i = 0; i < k; ++i) cs.push_back(random_vector(rng, sig));
      Multivector blade = gasub::testing::wedge_all(cs, sig);
      Multivector expect(sig);
      for (int i = 0; i < k; ++i) {
        double dot = scalar_part(left_contraction(a, cs[i]));
        std::vector<Multivector> rest;
        for (int j = 0; j < k; ++j)
          if (j != i) rest.push_back(cs[j]);
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        expect = expect + sign * dot * gasub::testing::wedge_all(rest, sig);
      }
      CHECK(rel_close(left_contraction(a, blade), expect, 1e-10));
    }
  }
}

TEST_CASE("grade parts") {
  Multivector m = Multivector::scalar(r300, 3.0) + Multivector::basis_blade(r300, 0b011, 2.0);
  CHECK(rel_close(grade_part(m, 2), Multivector::basis_blade(r300, 0b011, 2.0), 1e-15));
  CHECK(rel_close(grade_part(m, 0), Multivector::scalar(r300, 3.0), 1e-15));
  CHECK(grade_part(m, 1).empty());
  CHECK(grade_part(m, -1).empty());
  CHECK(grade_part(m, 4).empty());

  // e1 * e3 has pure grade 2
  Multivector p = geometric_product(e(r300, 1), e(r300, 3));
  CHECK(rel_close(grade_part(p, 2), Multivector::basis_blade(r300, 0b101), 1e-15));
  CHECK(grade_part(p, 0).empty());

  Rng rng(3);
  Multivector x = random_multivector(rng, r300);
  Multivector sum(r300);
  for (int k = 0; k <= 3; ++k) sum = sum + grade_part(x, k);
  CHECK((sum - x).max_abs_coeff() == 0.0);  // exact reconstruction
}

TEST_CASE("reverse") {
  CHECK(rel_close(reverse(Multivector::basis_blade(r300, 0b011)),
                  Multivector::basis_blade(r300, 0b011, -1.0), 1e-15));
  CHECK(rel_close(reverse(e(r300, 1)), e(r300, 1), 1e-15));
  // e123 reversed = e3 e2 e1 = -e123 by explicit reordering
  SeqProduct ex = seq_product(r300, {3, 2}, {1});
  CHECK(rel_close(reverse(Multivector::basis_blade(r300, 0b111)),
                  from_indices(r300, ex.indices, ex.factor), 1e-15));
}

TEST_CASE("blade inverse") {
  Blade e1(e(r300, 1), 1);
  CHECK(rel_close(blade_inverse(e1).mv(), e(r300, 1), 1e-15));

  // (e2^e3)^2 = -1 per the sign oracle, so the inverse is -e2e3
  SeqProduct sq = seq_product(r300, {2, 3}, {2, 3});
  REQUIRE(sq.indices.empty());
  REQUIRE(sq.factor == -1.0);
  Blade e23(Multivector::basis_blade(r300, 0b110), 2);
  CHECK(rel_close(blade_inverse(e23).mv(), Multivector::basis_blade(r300, 0b110, -1.0), 1e-15));
  CHECK(rel_close(geometric_product(blade_inverse(e23).mv(), e23.mv()),
                  Multivector::scalar(r300, 1.0), 1e-15));

  Blade r1(e(r001, 1), 1);
  CHECK_THROWS_AS(blade_inverse(r1), NotInvertible);
}

TEST_CASE("pseudoscalar") {
  CHECK(pseudoscalar(r300).mv().coeff(0b111) == 1.0);
  CHECK(pseudoscalar(Signature{1, 1, 0}).mv().coeff(0b11) == 1.0);
  CHECK(pseudoscalar(Signature{2, 1, 0}).mv().coeff(0b111) == 1.0);
  CHECK(pseudoscalar(r300).step() == 3);
}

TEST_CASE("kernel laws on random multivectors") {
  Rng rng(2024);
  std::vector<Signature> sigs = {{1, 0, 0}, {3, 0, 0}, {5, 0, 0}, {2, 2, 0},
                                 {1, 1, 1}, {2, 0, 2}, {1, 0, 1}};
  for (Signature sig : sigs) {
    for (int rep = 0; rep < 100; ++rep) {
      Multivector x = random_multivector(rng, sig);
      Multivector y = random_multivector(rng, sig);
      Multivector z = random_multivector(rng, sig);
      double scale = x.coeff_norm() * y.coeff_norm() * z.coeff_norm();
      CHECK(rel_close(geometric_product(geometric_product(x, y), z),
                      geometric_product(x, geometric_product(y, z)), 1e-10, scale));
      // a A = a | A + a ^ A
      Multivector a = random_vector(rng, sig);
      CHECK(rel_close(geometric_product(a, x), left_contraction(a, x) + outer_product(a, x),
                      1e-12, a.coeff_norm() * x.coeff_norm()));
      // (A ^ B) | C = A | (B | C)
      CHECK(rel_close(left_contraction(outer_product(x, y), z),
                      left_contraction(x, left_contraction(y, z)), 1e-10, scale));
    }
  }
}

TEST_CASE("a blade's geometric square is a scalar") {
  Rng rng(99);
  Signature sigs[] = {{4, 0, 0}, {2, 1, 1}, {2, 0, 2}};
  for (Signature sig : sigs)
    for (int rep = 0; rep < 50; ++rep) {
      int k = gasub::testing::uniform_int(rng, 1, sig.n());
      Blade b = gasub::testing::random_blade(rng, sig, k);
      Multivector sq = geometric_product(b.mv(), b.mv());
      Multivector nonscalar = sq - grade_part(sq, 0);
      CHECK(nonscalar.max_abs_coeff() <= 1e-10 * std::max(1.0, sq.max_abs_coeff() +
                                                                    b.mv().coeff_norm() *
                                                                        b.mv().coeff_norm()));
    }
}

TEST_CASE("canonical form stores no exact zeros") {
  Multivector m(r300);
  m.add_term(0b001, 1.0);
  m.add_term(0b001, -1.0);
  CHECK(m.empty());
}
