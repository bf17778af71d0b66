#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kkit/centralizer.hpp"
#include "kkit/errors.hpp"

using namespace kkit;

namespace {

struct Fixture {
  ChevalleyAlgebra alg;
  Slice slice;
  KappaForm kappa;
  Fixture(const char* spec)
      : alg(build_chevalley_algebra(build_root_datum(spec))),
        slice(integral_complement(alg)),
        kappa(kappa_form(alg, very_good_product(alg.datum))) {}
};

} // namespace

TEST_CASE("cotangent fiber certificates") {
  SUBCASE("gl2 at x = e: the 2x2 pairing matrix is invertible") {
    Fixture fx("GL(2)");
    FieldModel model = make_field_model(fx.alg, 5);
    ConditionProfile profile = condition_profile_with_kappa(fx.alg, fx.kappa, 5);
    CotangentCertificate cert =
        cotangent_iso_check(model, fx.slice, fx.kappa, FpVec{0, 0}, profile);
    CHECK(cert.pass);
    REQUIRE(cert.pairing.rows() == 2);
    REQUIRE(cert.pairing.cols() == 2);
    // the centralizer of e = E12 is span{1, E12}; kappa(1, E11) = 1 and
    // kappa(E12, E21) = 1 make the pairing an off-diagonal unit matrix
    CHECK(cert.det != 0);
  }
  SUBCASE("sl2 at p=5: the 1x1 matrix (kappa(e,f)) = (1)") {
    Fixture fx("SC(A1)");
    FieldModel model = make_field_model(fx.alg, 5);
    ConditionProfile profile = condition_profile_with_kappa(fx.alg, fx.kappa, 5);
    CotangentCertificate cert =
        cotangent_iso_check(model, fx.slice, fx.kappa, FpVec{0}, profile);
    CHECK(cert.pass);
    REQUIRE(cert.pairing.rows() == 1);
    CHECK(cert.pairing(0, 0) == 1);
    CHECK(cert.det == 1);
  }
  SUBCASE("degenerate probe: sl2 at p=2") {
    Fixture fx("SC(A1)");
    FieldModel model = make_field_model(fx.alg, 2);
    ConditionProfile profile = condition_profile_with_kappa(fx.alg, fx.kappa, 2);
    CHECK_THROWS_AS(cotangent_iso_check(model, fx.slice, fx.kappa, FpVec{0}, profile),
                    ConditionViolation);
  }
  SUBCASE("sampled fibers across groups") {
    for (const char* spec : {"SC(A2)", "SC(B2)", "GL(3)"}) {
      Fixture fx(spec);
      for (std::uint64_t p : {5ull, 7ull}) {
        if (!is_very_good_prime(fx.alg.datum, p)) continue;
        FieldModel model = make_field_model(fx.alg, p);
        ConditionProfile profile = condition_profile_with_kappa(fx.alg, fx.kappa, p);
        const std::size_t r = fx.alg.rank();
        for (std::size_t s = 0; s < 25; ++s) {
          SplitMix64 rng(mix_seed(5150, s));
          FpVec coeffs(r);
          for (auto& c : coeffs) c = rng.below(p);
          CotangentCertificate cert =
              cotangent_iso_check(model, fx.slice, fx.kappa, coeffs, profile);
          CHECK(cert.pass);
        }
      }
    }
  }
}

TEST_CASE("kappa annihilator identity") {
  SUBCASE("x = 0 passes trivially") {
    Fixture fx("SC(A2)");
    FieldModel model = make_field_model(fx.alg, 5);
    AnnihilatorCheck c = kappa_annihilator_check(model, fx.kappa, FpVec(fx.alg.dim, 0));
    CHECK(c.pass);
  }
  SUBCASE("sl2: kappa(e, [e, z]) = 0 for basis z") {
    Fixture fx("SC(A1)");
    FieldModel model = make_field_model(fx.alg, 5);
    FpVec e(fx.alg.dim, 0);
    e[0] = 1;
    AnnihilatorCheck c = kappa_annihilator_check(model, fx.kappa, e);
    CHECK(c.pass);
    CHECK(c.annihilates);
    CHECK(c.dims_match);
  }
  SUBCASE("random gl3 points over F7, 50 samples") {
    Fixture fx("GL(3)");
    FieldModel model = make_field_model(fx.alg, 7);
    for (std::size_t s = 0; s < 50; ++s) {
      SplitMix64 rng(mix_seed(31337, s));
      FpVec x(fx.alg.dim);
      for (auto& v : x) v = rng.below(7);
      AnnihilatorCheck c = kappa_annihilator_check(model, fx.kappa, x);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("regular semisimple audit") {
  SUBCASE("sl2 at p=5") {
    Fixture fx("SC(A1)");
    FieldModel model = make_field_model(fx.alg, 5);
    ConditionProfile profile = condition_check(fx.alg.datum, 5);
    RsAuditReport rep = rs_audit(model, 200, 7, profile);
    CHECK(rep.applicable);
    CHECK(rep.members > 0);
    CHECK(rep.pass());
  }
  SUBCASE("SC(A2) at p=7, 200 samples") {
    Fixture fx("SC(A2)");
    FieldModel model = make_field_model(fx.alg, 7);
    ConditionProfile profile = condition_check(fx.alg.datum, 7);
    RsAuditReport rep = rs_audit(model, 200, 7, profile);
    CHECK(rep.applicable);
    CHECK(rep.members > 0);
    CHECK(rep.pass());
  }
  SUBCASE("membership can be vacuous over tiny fields, and that is visible") {
    // over F2 no A2 torus point pairs nonzero with all six roots
    Fixture fx("SC(A2)");
    FieldModel model = make_field_model(fx.alg, 2);
    ConditionProfile profile = condition_check(fx.alg.datum, 2);
    RsAuditReport rep = rs_audit(model, 100, 11, profile);
    CHECK(rep.applicable);
    CHECK(rep.members == 0);
  }
  SUBCASE("not applicable when the root differentials vanish") {
    Fixture fx("SC(A1)");
    FieldModel model = make_field_model(fx.alg, 2);
    ConditionProfile profile = condition_check(fx.alg.datum, 2);
    RsAuditReport rep = rs_audit(model, 10, 3, profile);
    CHECK_FALSE(rep.applicable);
    CHECK(rep.not_applicable_reason.find("(C1)") != std::string::npos);
  }
}

TEST_CASE("centralizer dimension equals rank on regular torus points") {
  // a hand-pinned member: h with d(alpha)(h) = 2 in sl2 at p = 5
  Fixture fx("SC(A1)");
  FieldModel model = make_field_model(fx.alg, 5);
  FpVec h(fx.alg.dim, 0);
  h[fx.alg.cartan_offset] = 1;
  FpMatrix gx = centralizer_fp(model, h);
  REQUIRE(gx.cols() == 1);
  CHECK(gx(fx.alg.cartan_offset, 0) == 1); // g_h = t
  // the reflection moves h: s(h) = -h != h mod 5
  IntMatrix w = simple_reflection_cochar(fx.alg.datum, fx.alg.datum.simple_roots[0]);
  CHECK(w(0, 0) == -1);
}
