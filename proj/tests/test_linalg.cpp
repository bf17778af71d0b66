#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kkit/errors.hpp"
#include "kkit/field.hpp"
#include "kkit/matrix.hpp"
#include "kkit/smith.hpp"

using namespace kkit;

namespace {

IntMatrix make(std::size_t r, std::size_t c, std::vector<long> entries) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = entries[i * c + j];
  return m;
}

IntMatrix random_matrix(SplitMix64& rng, std::size_t r, std::size_t c, long span) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = Int(static_cast<long>(rng.below(2 * span + 1)) - span);
  return m;
}

} // namespace

TEST_CASE("smith normal form on pinned matrices") {
  SUBCASE("diag(2,3) has divisor chain 1, 6") {
    SmithForm s = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
    REQUIRE(s.divisors.size() == 2);
    CHECK(s.divisors[0] == 1);
    CHECK(s.divisors[1] == 6);
  }
  SUBCASE("identity") {
    SmithForm s = smith_normal_form(IntMatrix::identity(3));
    for (const Int& d : s.divisors) CHECK(d == 1);
  }
  SUBCASE("Cartan matrix of A2") {
    SmithForm s = smith_normal_form(make(2, 2, {2, -1, -1, 2}));
    CHECK(s.divisors[0] == 1);
    CHECK(s.divisors[1] == 3);
  }
}

TEST_CASE("smith reconstruction invariant") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    IntMatrix m = random_matrix(rng, r, c, 6);
    SmithForm s = smith_normal_form(m);

    // divisor chain
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
      CHECK(s.divisors[i] >= 0);
      if (s.divisors[i] != 0) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
      if (s.divisors[i] == 0) CHECK(s.divisors[i + 1] == 0);
    }

    // left * M * right is the diagonal
    IntMatrix d = mat_mul(mat_mul(s.left, m), s.right);
    CHECK(d == s.diagonal(r, c));

    // the tracked inverses are exact, so M is reconstructible
    CHECK(mat_mul(s.left, s.left_inv) == IntMatrix::identity(r));
    CHECK(mat_mul(s.right, s.right_inv) == IntMatrix::identity(c));
    CHECK(mat_mul(mat_mul(s.left_inv, s.diagonal(r, c)), s.right_inv) == m);

    // transforms are unimodular
    CHECK(abs_int(det_bareiss(s.left)) == 1);
    CHECK(abs_int(det_bareiss(s.right)) == 1);
  }
}

TEST_CASE("prime torsion on pinned matrices") {
  CHECK(prime_torsion(make(2, 2, {2, 0, 0, 3}), 2) == 1);
  CHECK(prime_torsion(IntMatrix::identity(4), 5) == 0);
  // derived through the smith oracle: divisors of the A2 Cartan are 1, 3
  CHECK(prime_torsion(make(2, 2, {2, -1, -1, 2}), 3) == 1);
}

TEST_CASE("prime torsion equals the mod-p rank drop") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    IntMatrix m = random_matrix(rng, r, c, 8);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      GF f(p);
      std::size_t drop = rank_int(m) - rank_fp(reduce_mod(m, f), f);
      CHECK(prime_torsion(m, p) == drop);
    }
  }
}

TEST_CASE("kernels over prime fields and the rationals") {
  SUBCASE("zero 2x2 matrix mod 5") {
    KernelBasis k = kernel(IntMatrix(2, 2), 5);
    CHECK(k.dim() == 2);
  }
  SUBCASE("identity mod 5") {
    KernelBasis k = kernel(IntMatrix::identity(3), 5);
    CHECK(k.dim() == 0);
  }
  SUBCASE("ad(e) on sl2 mod 5") {
    // basis (e, h, f): ad(e) e = 0, ad(e) h = -2e, ad(e) f = h
    IntMatrix ad_e = make(3, 3, {0, -2, 0, 0, 0, 1, 0, 0, 0});
    KernelBasis k = kernel(ad_e, 5);
    REQUIRE(k.dim() == 1);
    CHECK(k.fp(0, 0) == 1); // spanned by e
    CHECK(k.fp(1, 0) == 0);
    CHECK(k.fp(2, 0) == 0);
  }
  SUBCASE("rank-nullity across characteristics") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
      IntMatrix m = random_matrix(rng, r, c, 5);
      CHECK(kernel(m, 0).dim() + rank_int(m) == c);
      for (std::uint64_t p : {2ull, 5ull}) {
        GF f(p);
        CHECK(kernel(m, p).dim() + rank_fp(reduce_mod(m, f), f) == c);
      }
    }
  }
}

TEST_CASE("integral basis complement") {
  SUBCASE("Z(1,-1) inside Z^2 completes with the first basis vector") {
    IntMatrix gens = make(2, 1, {1, -1});
    std::vector<std::size_t> sel = integral_basis_complement(gens, 2, 1);
    CHECK(sel == std::vector<std::size_t>{0});
  }
  SUBCASE("Z(1,1) inside Z^2") {
    IntMatrix gens = make(2, 1, {1, 1});
    std::vector<std::size_t> sel = integral_basis_complement(gens, 2, 1);
    CHECK(sel == std::vector<std::size_t>{0});
  }
  SUBCASE("diagonal of gl2: E11 completes E11 - E22; E11 + E22 has index 2") {
    // the trace direction (1,1) together with (1,-1) spans an index-2
    // sublattice, so the first standard vector is the integral choice
    IntMatrix gens = make(2, 1, {1, -1});
    std::vector<std::size_t> sel = integral_basis_complement(gens, 2, 1);
    REQUIRE(sel.size() == 1);
    IntMatrix full = make(2, 2, {1, 1, -1, 0});
    CHECK(abs_int(det_bareiss(full)) == 1);
    IntMatrix trace_dir = make(2, 2, {1, 1, -1, 1});
    CHECK(abs_int(det_bareiss(trace_dir)) == 2);
  }
  SUBCASE("no standard completion over Z") {
    IntMatrix gens = make(2, 1, {2, 3});
    CHECK_THROWS_AS(integral_basis_complement(gens, 2, 1), NoIntegralComplement);
    // over Z[1/6] the first vector works: det [[2,1],[3,0]] = -3
    CHECK(integral_basis_complement(gens, 2, 6) == std::vector<std::size_t>{0});
  }
  SUBCASE("non-summand generators are rejected") {
    IntMatrix gens = make(2, 1, {2, 0});
    CHECK_THROWS_AS(integral_basis_complement(gens, 2, 1), NoIntegralComplement);
  }
  SUBCASE("dependent generators are tolerated") {
    IntMatrix gens = make(2, 2, {1, 2, -1, -2});
    CHECK(integral_basis_complement(gens, 2, 1) == std::vector<std::size_t>{0});
  }
}

TEST_CASE("arbitrary-precision entries survive the pipeline") {
  // entries beyond 64 bits; cokernel torsion must still come out exact
  Int huge = 1;
  for (int i = 0; i < 80; ++i) huge *= 2;
  IntMatrix m(2, 2);
  m(0, 0) = huge;       // 2^80
  m(1, 1) = huge * 9;   // 2^80 * 3^2
  SmithForm s = smith_normal_form(m);
  CHECK(s.divisors[0] == huge);
  CHECK(s.divisors[1] == huge * 9);
  CHECK(mat_mul(mat_mul(s.left, m), s.right) == s.diagonal(2, 2));
  CHECK(prime_torsion(m, 2) == 2);
  CHECK(prime_torsion(m, 3) == 1);
  CHECK(prime_torsion(m, 5) == 0);
}

TEST_CASE("fraction-free determinant agrees with modular determinants") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng.below(6);
    IntMatrix m = random_matrix(rng, n, n, 9);
    Int d = det_bareiss(m);
    for (std::uint64_t p : {5ull, 7ull, 11ull}) {
      GF f(p);
      CHECK(det_fp(reduce_mod(m, f), f) == f.from_int(d));
    }
  }
}
