#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kkit/errors.hpp"
#include "kkit/waction.hpp"

using namespace kkit;

TEST_CASE("rescaled pairing and tau") {
  SUBCASE("A1: tau(alpha) is the coroot, <alpha,alpha>_Gr = 2") {
    RootDatum rd = build_root_datum("SC(A1)");
    GrForm gf = gr_form(rd);
    const Root& alpha = rd.roots[rd.simple_roots[0]];
    Rat t0 = gf.tau(0, 0) * Rat(alpha.char_coords[0]);
    CHECK(t0 == Rat(alpha.coroot_coords[0]));
  }
  SUBCASE("simply laced: tau(alpha) equals the coroot for every root") {
    for (const char* spec : {"SC(A2)", "SC(A3)", "SC(D4)"}) {
      RootDatum rd = build_root_datum(spec);
      GrForm gf = gr_form(rd);
      TauRootAudit audit = tau_root_audit(rd, gf, 0);
      CHECK(audit.coroot_identity);
      for (const Root& r : rd.roots) CHECK(r.length_sq == 1);
    }
  }
  SUBCASE("G2: long roots scale by three") {
    RootDatum rd = build_root_datum("SC(G2)");
    GrForm gf = gr_form(rd);
    CHECK(tau_root_audit(rd, gf, 0).coroot_identity);
    bool saw_long = false;
    for (const Root& r : rd.roots)
      if (r.length_sq == 3) {
        saw_long = true;
        for (std::size_t i = 0; i < rd.rank; ++i) {
          Rat lhs = 0;
          for (std::size_t j = 0; j < rd.rank; ++j)
            lhs += gf.tau(i, j) * Rat(r.char_coords[j]);
          CHECK(lhs == Rat(3) * Rat(r.coroot_coords[i]));
        }
      }
    CHECK(saw_long);
  }
  SUBCASE("B2 at p=5: short roots scale by one, long by two") {
    RootDatum rd = build_root_datum("SC(B2)");
    GrForm gf = gr_form(rd);
    TauRootAudit audit = tau_root_audit(rd, gf, 5);
    CHECK(audit.pass(5));
  }
  SUBCASE("tau(0) = 0 and full audits at very good primes") {
    for (const char* spec : {"SC(A2)", "SC(B3)", "SC(C3)", "SC(F4)", "SC(G2)"}) {
      RootDatum rd = build_root_datum(spec);
      GrForm gf = gr_form(rd);
      for (std::uint64_t p : {5ull, 7ull, 11ull}) {
        if (!is_very_good_prime(rd, p)) continue;
        CHECK(tau_root_audit(rd, gf, p).pass(p));
      }
    }
  }
  SUBCASE("products and GL are rejected") {
    CHECK_THROWS_AS(gr_form(build_root_datum("GL(2)")), UnsupportedGroup);
    CHECK_THROWS_AS(gr_form(build_root_datum("SC(A1)*SC(A1)")), UnsupportedGroup);
  }
  SUBCASE("bad primes are refused") {
    RootDatum rd = build_root_datum("SC(G2)");
    GrForm gf = gr_form(rd);
    CHECK_THROWS_AS(tau_root_audit(rd, gf, 3), ConditionViolation);
  }
}

TEST_CASE("twisted action mechanics") {
  ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A1)"));
  TwistedModule module = make_twisted_module(alg, 5, 6);
  GF f(5);

  SUBCASE("a constant killed by e_{-alpha} is fixed") {
    // the lowest root vector f spans a u_{-alpha}-fixed line
    std::vector<std::uint64_t> v(module.dim_v, 0);
    v[1] = 1; // e_{-alpha}
    VPoly fn = constant_function(module, v);
    CHECK(twisted_action(module, 0, fn) == fn);
  }
  SUBCASE("the constant e transforms with the pinned quadratic correction") {
    // (s . e)(e + x h) = e + 2x h - 4x^2 f
    std::vector<std::uint64_t> v(module.dim_v, 0);
    v[0] = 1;
    VPoly got = twisted_action(module, 0, constant_function(module, v));
    VPoly want;
    want.terms[mono_pack({0})] = {1, 0, 0};
    want.terms[mono_pack({1})] = {0, 0, 2};
    want.terms[mono_pack({2})] = {0, f.neg(4), 0};
    CHECK(got == want);
  }
  SUBCASE("involution on arbitrary seeded elements") {
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
      VPoly fn;
      for (unsigned deg = 0; deg <= 6; ++deg) {
        std::vector<std::uint64_t> v(module.dim_v);
        bool nonzero = false;
        for (auto& c : v) {
          c = rng.below(5);
          nonzero |= c != 0;
        }
        if (nonzero) fn.terms[mono_pack({deg})] = v;
      }
      CHECK(twisted_action(module, 0, twisted_action(module, 0, fn)) == fn);
    }
  }
  SUBCASE("truncation is refused, not silent") {
    TwistedModule tight = make_twisted_module(alg, 5, 6, 6);
    std::vector<std::uint64_t> v(tight.dim_v, 0);
    v[0] = 1; // needs two extra degrees under the unipotent factor
    VPoly fn = basis_function(tight, 0, mono_pack({6}));
    CHECK_THROWS_AS(twisted_action(tight, 0, fn), TruncationOverflow);
  }
}

TEST_CASE("braid relations in rank two") {
  SUBCASE("A2: (s t)^3 = 1 on seeded module elements") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A2)"));
    TwistedModule module = make_twisted_module(alg, 7, 6);
    SplitMix64 rng(17);
    for (int t = 0; t < 10; ++t) {
      VPoly fn = basis_function(module, rng.below(module.dim_v),
                                mono_pack({static_cast<unsigned>(rng.below(4)),
                                           static_cast<unsigned>(rng.below(3))}));
      VPoly cur = fn;
      for (int k = 0; k < 3; ++k) {
        cur = twisted_action(module, 1, cur);
        cur = twisted_action(module, 0, cur);
      }
      CHECK(cur == fn);
    }
  }
  SUBCASE("full audits at degree 6") {
    for (const char* spec : {"SC(A1)", "SC(A2)", "SC(B2)"}) {
      RootDatum rd = build_root_datum(spec);
      ChevalleyAlgebra alg = build_chevalley_algebra(rd);
      GrForm gf = gr_form(rd);
      WactionAudit audit = waction_audit(alg, gf, 5, 6, 99, 4);
      CHECK(audit.pass());
    }
  }
  SUBCASE("A1 involution covers all 3 x 7 basis functions") {
    RootDatum rd = build_root_datum("SC(A1)");
    ChevalleyAlgebra alg = build_chevalley_algebra(rd);
    WactionAudit audit = waction_audit(alg, gr_form(rd), 5, 6, 1, 2);
    CHECK(audit.involution_checked == 21);
    CHECK(audit.pass());
  }
  SUBCASE("bad primes and products are not applicable") {
    RootDatum rd = build_root_datum("SC(A1)");
    ChevalleyAlgebra alg = build_chevalley_algebra(rd);
    WactionAudit audit = waction_audit(alg, gr_form(rd), 2, 4, 1, 1);
    CHECK_FALSE(audit.applicable);
  }
  SUBCASE("the rank envelope gates higher ranks, and can be raised") {
    RootDatum rd = build_root_datum("SC(B3)");
    ChevalleyAlgebra alg = build_chevalley_algebra(rd);
    GrForm gf = gr_form(rd);
    WactionAudit capped = waction_audit(alg, gf, 5, 3, 1, 2);
    CHECK_FALSE(capped.applicable);
    CHECK(capped.not_applicable_reason.find("rank") != std::string::npos);
    WactionAudit raised = waction_audit(alg, gf, 5, 3, 1, 2, 3);
    CHECK(raised.pass());
  }
  SUBCASE("the degree envelope is enforced") {
    RootDatum rd = build_root_datum("SC(A1)");
    ChevalleyAlgebra alg = build_chevalley_algebra(rd);
    CHECK_THROWS_AS(waction_audit(alg, gr_form(rd), 5, 11, 1, 1), ConfigError);
  }
}

TEST_CASE("invariant dimensions agree between the two oracles") {
  SUBCASE("A1 at small degrees") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A1)"));
    for (std::uint64_t p : {5ull, 7ull}) {
      TwistedModule module = make_twisted_module(alg, p, 6);
      for (unsigned d : {0u, 1u, 2u, 3u, 4u}) {
        CHECK(invariant_dim_solve(module, d) == invariant_dim_average(module, d));
      }
    }
  }
  SUBCASE("A2 at degree 3") {
    ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(A2)"));
    TwistedModule module = make_twisted_module(alg, 7, 5);
    CHECK(invariant_dim_solve(module, 3) == invariant_dim_average(module, 3));
  }
}
