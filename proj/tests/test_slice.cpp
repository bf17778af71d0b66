#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kkit/errors.hpp"
#include "kkit/slice.hpp"

#include <algorithm>

using namespace kkit;

TEST_CASE("integral complements on pinned groups") {
  SUBCASE("GL(2): s = span{E21, E11}") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("GL(2)"));
    Slice s = integral_complement(alg);
    // basis order: E12, E21, E11, E22; the trace direction E11 + E22 has
    // index 2 against [e, n], so the lexicographic choice is E11
    CHECK(s.complement_basis == std::vector<std::size_t>{1, 2});
    CHECK(s.working_n == 1);
    std::vector<long> w = s.weights;
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<long>{-4, -2});
  }
  SUBCASE("SC(A1): s = span{f}, working ring inverts 2") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A1)"));
    Slice s = integral_complement(alg);
    CHECK(s.complement_basis == std::vector<std::size_t>{1});
    CHECK(s.working_n == 2);
    CHECK(s.weights == std::vector<long>{-4});
  }
  SUBCASE("GL(3): three complement directions") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("GL(3)"));
    Slice s = integral_complement(alg);
    CHECK(s.complement_basis.size() == 3);
    std::vector<long> w = s.weights;
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<long>{-6, -4, -2});
  }
}

TEST_CASE("weight character identity") {
  for (const char* spec :
       {"SC(A1)", "SC(A2)", "SC(B2)", "SC(B3)", "SC(C3)", "SC(D4)", "SC(G2)", "SC(F4)",
        "GL(2)", "GL(3)", "GL(4)", "SC(A2)*GL(2)"}) {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum(spec));
    Slice s = integral_complement(alg);
    WeightCheck wc = slice_weight_check(s, alg.datum);
    CHECK(wc.pass);
  }
  // G2 weights are -4, -12 against degrees 2, 6
  ChevalleyAlgebra g2 = build_chevalley_algebra(build_root_datum("SC(G2)"));
  WeightCheck wc = slice_weight_check(integral_complement(g2), g2.datum);
  CHECK(wc.slice_weights == std::vector<long>{-12, -4});
}

TEST_CASE("slice construction is deterministic") {
  ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(D4)"));
  Slice a = integral_complement(alg);
  Slice b = integral_complement(alg);
  CHECK(a.complement_basis == b.complement_basis);
  CHECK(a.weights == b.weights);
  CHECK(a.assembled_det == b.assembled_det);
}

TEST_CASE("assembled determinant is a unit at every very good prime") {
  for (const char* spec : {"SC(A3)", "SC(B3)", "SC(G2)", "SC(F4)", "GL(3)"}) {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum(spec));
    Slice s = integral_complement(alg);
    for (std::uint64_t p : prime_factors(s.assembled_det))
      CHECK_FALSE(is_very_good_prime(alg.datum, p));
  }
}

TEST_CASE("centralizers over field models") {
  SUBCASE("sl2 mod 5: the centralizer of e is spanned by e") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A1)"));
    FieldModel model = make_field_model(alg, 5);
    FpVec e(alg.dim, 0);
    e[0] = 1;
    FpMatrix gx = centralizer_fp(model, e);
    REQUIRE(gx.cols() == 1);
    CHECK(gx(0, 0) == 1);
    CHECK(gx(1, 0) == 0);
    CHECK(gx(2, 0) == 0);
  }
  SUBCASE("x = 0 centralizes everything") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A2)"));
    FieldModel model = make_field_model(alg, 7);
    FpVec zero(alg.dim, 0);
    CHECK(centralizer_fp(model, zero).cols() == alg.dim);
  }
  SUBCASE("gl2 companion point has a two-dimensional centralizer containing 1") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("GL(2)"));
    FieldModel model = make_field_model(alg, 7);
    Slice s = integral_complement(alg);
    GF f(7);
    FpVec coeffs{3, 4}; // E12 + 3 E21 + 4 E11
    FpVec x = slice_point_fp(model, s, coeffs);
    FpMatrix gx = centralizer_fp(model, x);
    CHECK(gx.cols() == 2);
    // the identity matrix E11 + E22 is in the kernel of ad(x)
    FpVec id(alg.dim, 0);
    id[alg.cartan_offset] = 1;
    id[alg.cartan_offset + 1] = 1;
    FpMatrix adx = ad_fp(model, x);
    for (std::uint64_t v : mat_vec_fp(adx, id, f)) CHECK(v == 0);
  }
}

TEST_CASE("regularity audit") {
  SUBCASE("SC(A2) at p=5, 100 samples, all pass") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A2)"));
    FieldModel model = make_field_model(alg, 5);
    Slice s = integral_complement(alg);
    ConditionProfile profile = condition_check(alg.datum, 5);
    RegularityAudit audit = regularity_audit(model, s, 100, 42, profile);
    CHECK(audit.pass());
    CHECK(audit.e_checked);
    CHECK(audit.samples_run == 101);
  }
  SUBCASE("SC(A1) at p=2 reports not-applicable in report-only mode") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A1)"));
    FieldModel model = make_field_model(alg, 2);
    Slice s = integral_complement(alg);
    ConditionProfile profile = condition_check(alg.datum, 2);
    RegularityAudit audit = regularity_audit(model, s, 10, 42, profile, false);
    CHECK_FALSE(audit.applicable);
    CHECK(audit.not_applicable_reason.find("(C3)") != std::string::npos);
    CHECK_THROWS_AS(regularity_audit(model, s, 10, 42, profile, true), ConditionViolation);
  }
  SUBCASE("characteristic zero") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(B2)"));
    Slice s = integral_complement(alg);
    RegularityAudit audit = regularity_audit_char0(alg, s, 5, 42);
    CHECK(audit.pass());
  }
  SUBCASE("identical seeds reproduce identical verdicts") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(B2)"));
    FieldModel model = make_field_model(alg, 5);
    Slice s = integral_complement(alg);
    ConditionProfile profile = condition_check(alg.datum, 5);
    RegularityAudit a = regularity_audit(model, s, 25, 9, profile);
    RegularityAudit b = regularity_audit(model, s, 25, 9, profile);
    CHECK(a.pass() == b.pass());
    CHECK(a.samples_run == b.samples_run);
  }
}

TEST_CASE("larger groups pass sampled regularity at very good primes") {
  for (const char* spec : {"SC(C3)", "SC(G2)", "GL(4)"}) {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum(spec));
    Slice s = integral_complement(alg);
    for (std::uint64_t p : {5ull, 7ull}) {
      if (!is_very_good_prime(alg.datum, p)) continue;
      FieldModel model = make_field_model(alg, p);
      ConditionProfile profile = condition_check(alg.datum, p);
      RegularityAudit audit = regularity_audit(model, s, 30, 1234, profile);
      CHECK(audit.pass());
    }
  }
}
