#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kkit/errors.hpp"
#include "kkit/suite.hpp"

#include <json.hpp>

using namespace kkit;

namespace {

const CheckResult* find_check(const VerificationReport& rep, const std::string& group,
                              long prime, const std::string& name) {
  for (const CheckResult& c : rep.checks)
    if (c.group == group && c.prime == prime && c.check == name) return &c;
  return nullptr;
}

} // namespace

TEST_CASE("an all-suite run on a clean pair is all green") {
  SuiteConfig cfg;
  cfg.groups = {"SC(A2)"};
  cfg.primes = {5};
  cfg.samples = 40;
  cfg.degree = 4;
  VerificationReport rep = run_suite(cfg);
  CHECK_FALSE(rep.has_unexpected_failures());
  CHECK(rep.count(CheckStatus::Fail) == 0);
  const CheckResult* reg = find_check(rep, "SC(A2)", 5, "slice/regularity-audit");
  REQUIRE(reg);
  CHECK(reg->status == CheckStatus::Pass);
  const CheckResult* wact = find_check(rep, "SC(A2)", 5, "waction/twisted-action");
  REQUIRE(wact);
  CHECK(wact->status == CheckStatus::Pass);
}

TEST_CASE("negative control: SC(A1) at p=2 reports the expected C1 failure") {
  SuiteConfig cfg;
  cfg.groups = {"SC(A1)"};
  cfg.primes = {2};
  cfg.suites = {"conditions"};
  VerificationReport rep = run_suite(cfg);
  const CheckResult* c1 = find_check(rep, "SC(A1)", 2, "conditions/c1");
  REQUIRE(c1);
  CHECK(c1->status == CheckStatus::ExpectedFail);
  CHECK_FALSE(c1->witness.empty());
  CHECK_FALSE(rep.has_unexpected_failures()); // documented bad pairs do not fail CI
}

TEST_CASE("negative control: dependent audits are not-applicable, never pass") {
  SuiteConfig cfg;
  cfg.groups = {"SC(A2)"};
  cfg.primes = {3};
  cfg.samples = 10;
  VerificationReport rep = run_suite(cfg);
  const CheckResult* c3 = find_check(rep, "SC(A2)", 3, "conditions/c3");
  REQUIRE(c3);
  CHECK(c3->status == CheckStatus::ExpectedFail);
  const CheckResult* c2 = find_check(rep, "SC(A2)", 3, "conditions/c2");
  REQUIRE(c2);
  CHECK(c2->status == CheckStatus::Pass);
  const CheckResult* reg = find_check(rep, "SC(A2)", 3, "slice/regularity-audit");
  REQUIRE(reg);
  CHECK(reg->status == CheckStatus::NotApplicable);
  CHECK(reg->detail.find("(C3)") != std::string::npos);
  const CheckResult* cot = find_check(rep, "SC(A2)", 3, "centralizer/cotangent-fiber");
  REQUIRE(cot);
  CHECK(cot->status == CheckStatus::NotApplicable);
  CHECK(cot->detail.find("(C4)") != std::string::npos);
  CHECK_FALSE(rep.has_unexpected_failures());
}

TEST_CASE("GL(2) fiber counts pass at q in {2,3}") {
  SuiteConfig cfg;
  cfg.groups = {"GL(2)"};
  cfg.primes = {2, 3};
  cfg.suites = {"groth"};
  cfg.groth_samples = 25;
  VerificationReport rep = run_suite(cfg);
  for (long q : {2, 3}) {
    const CheckResult* c = find_check(rep, "GL(2)", q, "groth/fiber-counts");
    REQUIRE(c);
    CHECK(c->status == CheckStatus::Pass);
  }
}

TEST_CASE("reports are byte-identical for identical configs") {
  SuiteConfig cfg;
  cfg.groups = {"SC(A1)", "GL(2)"};
  cfg.primes = {2, 5};
  cfg.samples = 15;
  cfg.degree = 3;
  cfg.seed = 99;
  std::string a = to_json(run_suite(cfg));
  std::string b = to_json(run_suite(cfg));
  CHECK(a == b);
  // worker count must not leak into the bytes
  cfg.threads = 1;
  CHECK(a == to_json(run_suite(cfg)));
  cfg.threads = 7;
  CHECK(a == to_json(run_suite(cfg)));
  cfg.threads = 0;
  // and a different seed changes the config echo, not determinism
  cfg.seed = 100;
  std::string c = to_json(run_suite(cfg));
  CHECK(a != c);
}

TEST_CASE("timings are opt-in because they break byte-identity") {
  SuiteConfig cfg;
  cfg.groups = {"SC(A1)"};
  cfg.primes = {5};
  cfg.suites = {"conditions"};
  std::string plain = to_json(run_suite(cfg));
  CHECK(plain.find("time_ms") == std::string::npos);
  cfg.emit_timings = true;
  std::string timed = to_json(run_suite(cfg));
  CHECK(timed.find("time_ms") != std::string::npos);
}

TEST_CASE("torsion tables are deterministic") {
  std::string a = emit_torsion_tables({"SC(G2)", "GL(3)"});
  std::string b = emit_torsion_tables({"SC(G2)", "GL(3)"});
  CHECK(a == b);
}

TEST_CASE("config validation") {
  SuiteConfig cfg;
  cfg.groups = {"SC(A1)"};
  cfg.suites = {"nonsense"};
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
  cfg.suites = {"all"};
  cfg.primes = {4};
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
  cfg.primes = {5};
  cfg.groups = {};
  CHECK_THROWS_AS(run_suite(cfg), ConfigError);
}

TEST_CASE("build errors surface as failed checks, not aborts") {
  SuiteConfig cfg;
  cfg.groups = {"SC(E7)"}; // slice complement needs no Weyl data; builds fine
  cfg.groups = {"GL(2)"};
  cfg.primes = {5};
  cfg.suites = {"conditions"};
  VerificationReport rep = run_suite(cfg);
  CHECK_FALSE(rep.has_unexpected_failures());
}

TEST_CASE("torsion tables") {
  std::string doc = emit_torsion_tables({"SC(A1)", "SC(B2)", "GL(2)", "GL(3)", "GL(4)"});
  auto parsed = nlohmann::json::parse(doc);
  REQUIRE(parsed.contains("tables"));
  for (const auto& t : parsed["tables"]) {
    std::string group = t["group"];
    if (group.rfind("GL", 0) == 0) {
      CHECK(t["derived_n"] == "1");
    }
    if (group == "SC(A1)") {
      CHECK(t["derived_n"] == "2");
      bool found_degree0 = false;
      for (const auto& d : t["degrees"])
        if (d["degree"] == 0) {
          found_degree0 = true;
          CHECK(d["torsion_primes"].size() == 1);
          CHECK(d["torsion_primes"][0] == 2);
        }
      CHECK(found_degree0);
    }
    if (group == "SC(B2)") {
      for (const auto& d : t["degrees"])
        for (const auto& p : d["torsion_primes"]) CHECK(p == 2);
    }
    CHECK(t["matches_very_good_product"] == true);
    CHECK(t["torsion_within_bad"] == true);
  }
}
