#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kkit/errors.hpp"
#include "kkit/root_datum.hpp"

#include <algorithm>
#include <set>

using namespace kkit;

TEST_CASE("spec grammar") {
  CHECK(parse_group_spec("SC(A2)*GL(3)").to_string() == "SC(A2)*GL(3)");
  CHECK(parse_group_spec("GL(1)").factors[0].is_gl);
  CHECK_THROWS_AS(parse_group_spec("SO(3)"), SpecParseError);
  CHECK_THROWS_AS(parse_group_spec("SC(H4)"), UnsupportedType);
  CHECK_THROWS_AS(parse_group_spec("SC(F5)"), UnsupportedType);
  CHECK_THROWS_AS(parse_group_spec("SC(A2)*"), SpecParseError);
  CHECK_THROWS_AS(parse_group_spec("GL(0)"), UnsupportedType);
}

TEST_CASE("pinned root data") {
  SUBCASE("SC(A1): two roots, rank-1 weight lattice, alpha = 2 * basis") {
    RootDatum rd = build_root_datum("SC(A1)");
    CHECK(rd.num_roots() == 2);
    CHECK(rd.rank == 1);
    const Root& alpha = rd.roots[rd.simple_roots[0]];
    CHECK(alpha.char_coords[0] == 2);
    CHECK(alpha.coroot_coords[0] == 1);
  }
  SUBCASE("GL(2): roots +-(1,-1) in Z^2") {
    RootDatum rd = build_root_datum("GL(2)");
    CHECK(rd.num_roots() == 2);
    CHECK(rd.rank == 2);
    std::set<std::vector<Int>> coords;
    for (const Root& r : rd.roots) coords.insert(r.char_coords);
    CHECK(coords.count({Int(1), Int(-1)}) == 1);
    CHECK(coords.count({Int(-1), Int(1)}) == 1);
  }
  SUBCASE("SC(G2): 12 roots, 6 long of squared length 3") {
    RootDatum rd = build_root_datum("SC(G2)");
    CHECK(rd.num_roots() == 12);
    std::size_t with_len3 = 0;
    for (const Root& r : rd.roots)
      if (r.length_sq == 3) ++with_len3;
    CHECK(with_len3 == 6);
    // Cartan round trip: <alpha_j, coroot_i> reproduces the matrix
    const FactorData& fd = rd.factors[0];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(pair_char_cochar(rd.roots[fd.simple_roots[j]].char_coords,
                               rd.roots[fd.simple_roots[i]].coroot_coords) ==
              fd.cartan(i, j));
  }
  SUBCASE("root counts across types") {
    CHECK(build_root_datum("SC(A4)").num_roots() == 20);
    CHECK(build_root_datum("SC(B3)").num_roots() == 18);
    CHECK(build_root_datum("SC(C3)").num_roots() == 18);
    CHECK(build_root_datum("SC(D4)").num_roots() == 24);
    CHECK(build_root_datum("SC(F4)").num_roots() == 48);
    CHECK(build_root_datum("SC(E6)").num_roots() == 72);
  }
  SUBCASE("coroot pairing normalization") {
    for (const char* spec : {"SC(B2)", "SC(G2)", "SC(F4)", "GL(3)"}) {
      RootDatum rd = build_root_datum(spec);
      for (const Root& r : rd.roots)
        CHECK(pair_char_cochar(r.char_coords, r.coroot_coords) == 2);
    }
  }
}

TEST_CASE("heights and exponents") {
  SUBCASE("A1 degrees (2)") {
    HeightsAndExponents he = heights_and_exponents(build_root_datum("SC(A1)"));
    CHECK(he.merged_degrees == std::vector<int>{2});
  }
  SUBCASE("GL(3) degrees 1,2,3") {
    HeightsAndExponents he = heights_and_exponents(build_root_datum("GL(3)"));
    CHECK(he.merged_degrees == std::vector<int>{1, 2, 3});
  }
  SUBCASE("G2 degrees from the height dual partition") {
    // heights of the positive roots: 1,1,2,3,4,5
    HeightsAndExponents he = heights_and_exponents(build_root_datum("SC(G2)"));
    CHECK(he.height_multiset == std::vector<long>{1, 1, 2, 3, 4, 5});
    CHECK(he.merged_degrees == std::vector<int>{2, 6});
  }
  SUBCASE("classical degree tables") {
    CHECK(heights_and_exponents(build_root_datum("SC(B3)")).merged_degrees ==
          std::vector<int>{2, 4, 6});
    CHECK(heights_and_exponents(build_root_datum("SC(C3)")).merged_degrees ==
          std::vector<int>{2, 4, 6});
    CHECK(heights_and_exponents(build_root_datum("SC(D4)")).merged_degrees ==
          std::vector<int>{2, 4, 4, 6});
    CHECK(heights_and_exponents(build_root_datum("SC(F4)")).merged_degrees ==
          std::vector<int>{2, 6, 8, 12});
    CHECK(heights_and_exponents(build_root_datum("SC(A2)*GL(2)")).merged_degrees ==
          std::vector<int>{1, 2, 2, 3});
  }
  SUBCASE("degrees minus one sum to the positive root count") {
    for (const char* spec : {"SC(A4)", "SC(B3)", "SC(D4)", "SC(F4)", "GL(4)"}) {
      RootDatum rd = build_root_datum(spec);
      HeightsAndExponents he = heights_and_exponents(rd);
      std::size_t sum = 0;
      for (int d : he.merged_degrees) sum += static_cast<std::size_t>(d - 1);
      CHECK(sum == rd.positive_roots.size());
    }
  }
}

TEST_CASE("lambda-circ pairs to twice the height") {
  for (const char* spec : {"SC(A1)", "SC(A3)", "SC(B3)", "SC(C3)", "SC(D4)", "SC(G2)",
                           "SC(F4)", "GL(4)", "SC(A2)*GL(2)"}) {
    RootDatum rd = build_root_datum(spec);
    for (const Root& r : rd.roots)
      CHECK(pair_char_cochar(r.char_coords, rd.lambda_circ) == Int(2 * r.height));
  }
}

TEST_CASE("conditions") {
  SUBCASE("SC(A1) at p=2 fails C1") {
    ConditionProfile cp = condition_check(build_root_datum("SC(A1)"), 2);
    CHECK_FALSE(cp.c1);
    CHECK(cp.good); // type A has no bad primes
    CHECK(cp.witness.find("d(alpha)") != std::string::npos);
  }
  SUBCASE("GL(2) at p=2 satisfies everything") {
    // gram determinant of the gl2 trace form is -1 (pinned in the
    // quotient tests); any unit certifies the fourth condition
    ConditionProfile cp = condition_check(build_root_datum("GL(2)"), 2, Int(-1));
    CHECK(cp.c1);
    CHECK(cp.c2);
    CHECK(cp.c3);
    CHECK(cp.c4);
  }
  SUBCASE("SC(A2) at p=3: C2 holds, C3 fails") {
    ConditionProfile cp = condition_check(build_root_datum("SC(A2)"), 3);
    CHECK(cp.c2);
    CHECK_FALSE(cp.c3);
    CHECK(cp.witness.find("character lattice") != std::string::npos);
  }
  SUBCASE("implication chain on a matrix of groups and primes") {
    for (const char* spec : {"SC(A1)", "SC(A2)", "SC(B2)", "SC(G2)", "GL(3)"}) {
      RootDatum rd = build_root_datum(spec);
      for (std::uint64_t p : {0ull, 2ull, 3ull, 5ull, 7ull}) {
        ConditionProfile cp = condition_check(rd, p);
        if (cp.c4) CHECK(cp.c3);
        if (cp.c3) CHECK(cp.c2);
        if (cp.c3) CHECK(cp.c1);
      }
    }
  }
  SUBCASE("simply connected cocharacter quotients are torsion-free") {
    for (const char* spec : {"SC(A4)", "SC(B3)", "SC(D4)", "SC(G2)", "SC(F4)"}) {
      RootDatum rd = build_root_datum(spec);
      for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        ConditionProfile cp = condition_check(rd, p);
        CHECK(cp.cochar_torsion_free);
      }
    }
  }
  SUBCASE("characteristic zero satisfies everything") {
    ConditionProfile cp = condition_check(build_root_datum("SC(C3)"), 0, Int(4));
    CHECK((cp.c1 && cp.c2 && cp.c3 && cp.c4));
  }
}

TEST_CASE("prime tables") {
  CHECK(very_good_product(build_root_datum("SC(A1)")) == 2);
  CHECK(very_good_product(build_root_datum("SC(A3)")) == 2);
  CHECK(very_good_product(build_root_datum("SC(A4)")) == 5);
  CHECK(very_good_product(build_root_datum("SC(B3)")) == 2);
  CHECK(very_good_product(build_root_datum("SC(G2)")) == 6);
  CHECK(very_good_product(build_root_datum("SC(E6)")) == 6);
  CHECK(very_good_product(build_root_datum("GL(4)")) == 1);
  CHECK(very_good_product(build_root_datum("SC(A2)*GL(3)")) == 3);
  CHECK(is_very_good_prime(build_root_datum("SC(G2)"), 5));
  CHECK_FALSE(is_very_good_prime(build_root_datum("SC(G2)"), 3));
}

TEST_CASE("weyl groups") {
  SUBCASE("orders") {
    CHECK(weyl_elements(build_root_datum("SC(A1)")).size() == 2);
    CHECK(weyl_elements(build_root_datum("SC(A2)")).size() == 6);
    CHECK(weyl_elements(build_root_datum("SC(B2)")).size() == 8);
    CHECK(weyl_elements(build_root_datum("SC(G2)")).size() == 12);
    CHECK(weyl_elements(build_root_datum("GL(3)")).size() == 6);
    CHECK(weyl_elements(build_root_datum("SC(F4)")).size() == 1152);
  }
  SUBCASE("closed under composition") {
    RootDatum rd = build_root_datum("SC(B2)");
    std::vector<IntMatrix> w = weyl_elements(rd);
    std::set<std::vector<Int>> members;
    for (const IntMatrix& m : w) members.insert(m.data());
    SplitMix64 rng(23);
    for (int t = 0; t < 50; ++t) {
      const IntMatrix& a = w[rng.below(w.size())];
      const IntMatrix& b = w[rng.below(w.size())];
      CHECK(members.count(mat_mul(a, b).data()) == 1);
    }
  }
  SUBCASE("cap") {
    CHECK_THROWS_AS(weyl_elements(build_root_datum("SC(E7)")), WeylTooLarge);
    CHECK_THROWS_AS(weyl_elements(build_root_datum("SC(A2)"), 3), WeylTooLarge);
  }
  SUBCASE("reflections preserve the root set") {
    RootDatum rd = build_root_datum("SC(G2)");
    std::set<std::vector<Int>> roots;
    for (const Root& r : rd.roots) roots.insert(r.coroot_coords);
    for (std::size_t s : rd.simple_roots) {
      IntMatrix w = simple_reflection_cochar(rd, s);
      for (const Root& r : rd.roots) {
        std::vector<Int> img = mat_vec(w, r.coroot_coords);
        CHECK(roots.count(img) == 1);
      }
    }
  }
}
