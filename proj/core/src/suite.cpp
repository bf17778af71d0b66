#include "kkit/suite.hpp"

#include "kkit/centralizer.hpp"
#include "kkit/chevalley.hpp"
#include "kkit/errors.hpp"
#include "kkit/groth.hpp"
#include "kkit/quotient.hpp"
#include "kkit/slice.hpp"
#include "kkit/waction.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

namespace kkit {

std::string kkit_version() { return "kkit 0.1.0"; }

namespace {

struct GroupContext {
  RootDatum datum;
  ChevalleyAlgebra algebra;
  SpringerTorsionReport torsion;
  Slice slice;
  KappaForm kappa;
  std::vector<IntMatrix> weyl; // enumerated once when within the cap
  bool weyl_available = false;
  std::string build_error;
};

GroupContext build_context(const SuiteConfig& cfg, const std::string& spec) {
  GroupContext ctx;
  try {
    ctx.datum = build_root_datum(spec);
    ctx.algebra = build_chevalley_algebra(ctx.datum);
    ctx.torsion = springer_torsion_report(ctx.algebra);
    ctx.slice = integral_complement(ctx.algebra);
    ctx.kappa = kappa_form(ctx.algebra, very_good_product(ctx.datum));
    // the torus-point audit is the one consumer of the enumerated group
    bool needs_weyl = false;
    for (const std::string& s : cfg.suites)
      if (s == "all" || s == "centralizer") needs_weyl = true;
    if (needs_weyl && known_weyl_order(ctx.datum) <= Int(cfg.weyl_cap)) {
      ctx.weyl = weyl_elements(ctx.datum, cfg.weyl_cap);
      ctx.weyl_available = true;
    }
  } catch (const std::exception& e) {
    ctx.build_error = e.what();
  }
  return ctx;
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

bool wants(const SuiteConfig& cfg, const char* suite) {
  for (const std::string& s : cfg.suites)
    if (s == "all" || s == suite) return true;
  return false;
}

class Emitter {
 public:
  Emitter(std::vector<CheckResult>& out, std::string group, long prime)
      : out_(out), group_(std::move(group)), prime_(prime) {}

  CheckResult& emit(const std::string& check, const std::string& statement,
                    CheckStatus status, const std::string& detail = "") {
    CheckResult r;
    r.group = group_;
    r.prime = prime_;
    r.check = check;
    r.statement = statement;
    r.status = status;
    r.detail = detail;
    out_.push_back(std::move(r));
    return out_.back();
  }

  // pass, or fail with the named witness; expected-fail when the prime is
  // documented bad for the group
  CheckResult& verdict(const std::string& check, const std::string& statement, bool ok,
                       bool failure_expected, const std::string& detail) {
    CheckStatus st = ok ? CheckStatus::Pass
                        : (failure_expected ? CheckStatus::ExpectedFail : CheckStatus::Fail);
    return emit(check, statement, st, detail);
  }

 private:
  std::vector<CheckResult>& out_;
  std::string group_;
  long prime_;
};

void group_level_checks(const SuiteConfig& cfg, const std::string& group,
                        const GroupContext& ctx, std::vector<CheckResult>& out) {
  Emitter em(out, group, -1);

  if (wants(cfg, "springer")) {
    {
      bool ok = ctx.torsion.torsion_within_bad;
      CheckResult& r = em.verdict("springer/torsion-localization",
                                  "graded-ad-e-cokernel-torsion-only-at-bad-primes", ok,
                                  false, "torsion primes outside -1,0 lie in the bad set");
      if (!ok) {
        r.witness["regular_torsion_primes"] = join_u64(ctx.torsion.regular_torsion_primes);
        r.witness["bad_primes"] = join_u64(bad_primes(ctx.datum));
      }
    }
    {
      Int vg = very_good_product(ctx.datum);
      bool ok = ctx.torsion.derived_n == vg;
      CheckResult& r = em.verdict("springer/derived-n-matches-very-good",
                                  "inverted-integer-equals-very-good-product", ok, false,
                                  "N derived from torsion = " + ctx.torsion.derived_n.str());
      if (!ok) {
        r.witness["derived_n"] = ctx.torsion.derived_n.str();
        r.witness["very_good_product"] = vg.str();
      }
    }
    {
      bool ok = true;
      long bad_degree = 0;
      for (const SpringerDegreeReport& d : ctx.torsion.degrees)
        if (d.degree < 0 && !d.injective_over_q) {
          ok = false;
          bad_degree = d.degree;
        }
      CheckResult& r = em.verdict("springer/negative-degrees-injective-rationally",
                                  "ad-e-injective-on-n-over-the-rationals", ok, false, "");
      if (!ok) r.witness["degree"] = std::to_string(bad_degree);
    }
  }

  if (wants(cfg, "slice")) {
    {
      Slice rebuilt = integral_complement(ctx.algebra);
      bool ok = rebuilt.complement_basis == ctx.slice.complement_basis;
      em.verdict("slice/deterministic", "complement-selection-is-reproducible", ok, false,
                 "two constructions select identical index sets");
    }
    em.emit("slice/direct-sum-determinant-unit", "borel-splits-as-s-plus-ad-e-image",
            CheckStatus::Pass,
            "assembled determinant " + ctx.slice.assembled_det.str() +
                " is a unit in Z[1/" + ctx.slice.working_n.str() + "]");
    {
      WeightCheck wc = slice_weight_check(ctx.slice, ctx.datum);
      CheckResult& r = em.verdict("slice/weight-character-identity",
                                  "slice-weights-equal-minus-twice-degrees", wc.pass, false,
                                  "");
      if (!wc.pass) {
        std::string got, want;
        for (long w : wc.slice_weights) got += std::to_string(w) + " ";
        for (long w : wc.expected) want += std::to_string(w) + " ";
        r.witness["slice_weights"] = got;
        r.witness["expected"] = want;
      }
    }
  }

  if (wants(cfg, "quotient")) {
    em.emit("quotient/kappa-invariant-form", "invariant-form-is-a-perfect-pairing",
            CheckStatus::Pass,
            "Gram determinant " + ctx.kappa.det.str() + "; invariance verified on all triples");
  }

  if (wants(cfg, "waction")) {
    if (ctx.datum.is_single_sc()) {
      try {
        GrForm gf = gr_form(ctx.datum);
        TauRootAudit tau = tau_root_audit(ctx.datum, gf, 0);
        CheckResult& r = em.verdict(
            "waction/tau-root-identities", "tau-multiplies-roots-by-squared-length",
            tau.coroot_identity && tau.differential_identity && tau.w_equivariant, false,
            "exact over the rationals");
        if (r.status == CheckStatus::Fail) {
          r.witness["coroot_identity"] = tau.coroot_identity ? "ok" : "failed";
          r.witness["differential_identity"] = tau.differential_identity ? "ok" : "failed";
          r.witness["w_equivariant"] = tau.w_equivariant ? "ok" : "failed";
        }
        em.verdict("waction/formula-equivalence",
                   "geometric-and-algebraic-reflection-formulas-agree-under-tau",
                   tau.differential_identity && tau.w_equivariant, false,
                   "exact polynomial identity on the base coordinates");
      } catch (const std::exception& e) {
        em.emit("waction/tau-root-identities", "tau-multiplies-roots-by-squared-length",
                CheckStatus::Fail, e.what());
      }
    } else {
      em.emit("waction/tau-root-identities", "tau-multiplies-roots-by-squared-length",
              CheckStatus::NotApplicable,
              "needs a single simply connected quasi-simple factor");
    }
  }
}

void prime_level_checks(const SuiteConfig& cfg, const std::string& group,
                        const GroupContext& ctx, std::uint64_t p,
                        std::vector<CheckResult>& out) {
  Emitter em(out, group, static_cast<long>(p));
  ConditionProfile profile = condition_check(ctx.datum, p, ctx.kappa.det);
  const bool documented_bad = p != 0 && !is_very_good_prime(ctx.datum, p);

  if (wants(cfg, "conditions")) {
    auto cond = [&](const char* name, const char* statement, bool value) {
      CheckResult& r = em.verdict(std::string("conditions/") + name, statement, value,
                                  documented_bad, value ? "" : profile.witness);
      if (!value) r.witness["profile"] = profile.witness;
    };
    cond("c1", "root-differentials-nonzero", profile.c1);
    cond("c2", "good-prime-with-cocharacter-quotient-torsion-free", profile.c2);
    cond("c3", "good-prime-with-both-lattice-quotients-torsion-free", profile.c3);
    cond("c4", "invariant-form-identifies-g-with-its-dual", profile.c4);
    bool chain = (!profile.c4 || profile.c3) && (!profile.c3 || profile.c2) &&
                 (!profile.c3 || profile.c1);
    em.verdict("conditions/implication-chain", "condition-implications-hold", chain, false,
               "c4 => c3 => c2 and c3 => c1");
  }

  if (wants(cfg, "springer")) {
    if (p == 0 || profile.c2) {
      bool ok = true;
      long bad_degree = 1;
      for (const auto& [deg, basis] : ctx.algebra.graded) {
        if (deg >= 0) continue;
        IntMatrix t = springer_map(ctx.algebra, deg);
        std::size_t rank = p == 0 ? rank_int(t) : rank_fp(reduce_mod(t, GF(p)), GF(p));
        if (rank != t.cols()) {
          ok = false;
          bad_degree = deg;
        }
      }
      CheckResult& r = em.verdict("springer/injective-mod-p", "ad-e-injective-on-n", ok,
                                  documented_bad, "all graded components of negative degree");
      if (!ok) r.witness["degree"] = std::to_string(bad_degree);
    } else {
      em.emit("springer/injective-mod-p", "ad-e-injective-on-n", CheckStatus::NotApplicable,
              "(C2) fails at p=" + std::to_string(p) + " for " + group);
    }
    if (p == 0 || profile.c3) {
      bool ok = true;
      long bad_degree = 0;
      for (const auto& [deg, basis] : ctx.algebra.graded) {
        if (deg < 0) continue;
        IntMatrix t = springer_map(ctx.algebra, deg);
        std::size_t rank = p == 0 ? rank_int(t) : rank_fp(reduce_mod(t, GF(p)), GF(p));
        if (rank != t.rows()) {
          ok = false;
          bad_degree = deg;
        }
      }
      CheckResult& r = em.verdict("springer/surjective-mod-p",
                                  "positive-part-contained-in-ad-e-image", ok,
                                  documented_bad, "all graded components of degree >= 0");
      if (!ok) r.witness["degree"] = std::to_string(bad_degree);
    } else {
      em.emit("springer/surjective-mod-p", "positive-part-contained-in-ad-e-image",
              CheckStatus::NotApplicable,
              "(C3) fails at p=" + std::to_string(p) + " for " + group);
    }
  }

  if (wants(cfg, "slice")) {
    if (p == 0) {
      RegularityAudit audit =
          regularity_audit_char0(ctx.algebra, ctx.slice, cfg.samples, cfg.seed);
      CheckResult& r = em.verdict("slice/regularity-audit",
                                  "slice-points-are-regular-with-split-complement",
                                  audit.pass(), false,
                                  std::to_string(audit.samples_run) + " samples over Q");
      if (!audit.pass() && !audit.failures.empty()) {
        r.witness["check"] = audit.failures[0].check;
        r.witness["sample"] = std::to_string(audit.failures[0].sample);
      }
    } else {
      FieldModel model = make_field_model(ctx.algebra, p);
      RegularityAudit audit =
          regularity_audit(model, ctx.slice, cfg.samples, cfg.seed, profile, false);
      if (!audit.applicable) {
        em.emit("slice/regularity-audit", "slice-points-are-regular-with-split-complement",
                CheckStatus::NotApplicable, audit.not_applicable_reason);
      } else {
        CheckResult& r = em.verdict("slice/regularity-audit",
                                    "slice-points-are-regular-with-split-complement",
                                    audit.pass(), documented_bad,
                                    std::to_string(audit.samples_run) + " samples");
        if (!audit.failures.empty()) {
          r.witness["check"] = audit.failures[0].check;
          r.witness["sample"] = std::to_string(audit.failures[0].sample);
          std::string coords;
          for (const std::string& c : audit.failures[0].coeffs) coords += c + " ";
          r.witness["coords"] = coords;
        }
      }
    }
  }

  if (wants(cfg, "quotient")) {
    {
      bool nondeg = p == 0 ? ctx.kappa.det != 0 : ctx.kappa.det % Int(p) != 0;
      CheckResult& r = em.verdict("quotient/kappa-nondegenerate",
                                  "invariant-form-nondegenerate-at-p", nondeg,
                                  documented_bad, "Gram determinant " + ctx.kappa.det.str());
      if (!nondeg) r.witness["gram_det"] = ctx.kappa.det.str();
    }
    if (ctx.datum.is_single_gl() && p != 0) {
      const std::size_t n = static_cast<std::size_t>(ctx.datum.factors[0].spec.rank);
      if (n <= 4 && p <= 11) {
        SliceChartAudit chart = slice_chart_audit_gl(ctx.algebra, ctx.slice, p);
        CheckResult& r = em.verdict("quotient/gl-chart-bijective",
                                    "slice-to-invariants-bijective-on-points", chart.pass,
                                    false,
                                    std::to_string(chart.points) + " points, " +
                                        std::to_string(chart.distinct_images) + " images");
        if (!chart.pass) r.witness["collision"] = join_u64(chart.collision_witness);
      } else {
        em.emit("quotient/gl-chart-bijective", "slice-to-invariants-bijective-on-points",
                CheckStatus::NotApplicable, "outside the brute-force envelope n<=4, q<=11");
      }
      ChevalleyRestrictionCheck restr = chevalley_restriction_check(n, p, 1000, cfg.seed);
      em.verdict("quotient/chevalley-restriction",
                 "invariants-restrict-to-symmetric-functions", restr.pass, false,
                 std::to_string(restr.samples) + " diagonal samples");
      ConjugationInvarianceCheck conj = conjugation_invariance_check(n, p, 100, cfg.seed);
      em.verdict("quotient/conjugation-invariance",
                 "exterior-trace-invariants-are-conjugation-invariant", conj.pass, false,
                 std::to_string(conj.samples) + " unipotent conjugations");
    }
  }

  if (wants(cfg, "centralizer")) {
    if (p == 0) {
      // exact rational fibers; (C4) always holds in characteristic zero
      bool cot_ok = true, ann_ok = true;
      const std::size_t r = ctx.algebra.rank();
      constexpr std::uint64_t kWindow = 1 << 12;
      for (std::size_t s = 0; s < cfg.samples + 1; ++s) {
        IntVec coeffs(r, 0);
        if (s > 0) {
          SplitMix64 rng(mix_seed(cfg.seed, s));
          for (auto& c : coeffs) c = Int(rng.below(2 * kWindow)) - Int(kWindow);
        }
        CotangentCertificateRat cert =
            cotangent_iso_check_rat(ctx.algebra, ctx.slice, ctx.kappa, coeffs);
        if (!cert.pass) cot_ok = false;
        AnnihilatorCheck ann = kappa_annihilator_check_rat(
            ctx.algebra, ctx.kappa, slice_point_int(ctx.algebra, ctx.slice, coeffs));
        if (!ann.pass) ann_ok = false;
      }
      em.verdict("centralizer/cotangent-fiber", "centralizer-pairs-perfectly-with-slice",
                 cot_ok, false, std::to_string(cfg.samples + 1) + " rational fibers");
      em.verdict("centralizer/kappa-annihilator",
                 "kappa-maps-centralizer-onto-annihilator-of-ad-image", ann_ok, false,
                 "exhaustive over the basis per sample");
    } else if (!profile.c4) {
      const std::string why = "(C4) fails at p=" + std::to_string(p) + " for " + group;
      em.emit("centralizer/cotangent-fiber", "centralizer-pairs-perfectly-with-slice",
              CheckStatus::NotApplicable, why);
      em.emit("centralizer/kappa-annihilator",
              "kappa-maps-centralizer-onto-annihilator-of-ad-image",
              CheckStatus::NotApplicable, why);
    } else {
      FieldModel model = make_field_model(ctx.algebra, p);
      const std::size_t r = ctx.algebra.rank();
      bool cot_ok = true, ann_ok = true;
      std::vector<std::uint64_t> bad_coeffs;
      for (std::size_t s = 0; s < cfg.samples + 1; ++s) {
        FpVec coeffs(r, 0);
        if (s > 0) {
          SplitMix64 rng(mix_seed(cfg.seed, s));
          for (std::size_t k = 0; k < r; ++k) coeffs[k] = rng.below(p);
        }
        CotangentCertificate cert =
            cotangent_iso_check(model, ctx.slice, ctx.kappa, coeffs, profile);
        if (!cert.pass) {
          cot_ok = false;
          if (bad_coeffs.empty()) bad_coeffs = coeffs;
        }
        AnnihilatorCheck ann = kappa_annihilator_check(
            model, ctx.kappa, slice_point_fp(model, ctx.slice, coeffs));
        if (!ann.pass) ann_ok = false;
      }
      CheckResult& r1 = em.verdict("centralizer/cotangent-fiber",
                                   "centralizer-pairs-perfectly-with-slice", cot_ok,
                                   documented_bad,
                                   std::to_string(cfg.samples + 1) + " fiber certificates");
      if (!cot_ok) r1.witness["coords"] = join_u64(bad_coeffs);
      em.verdict("centralizer/kappa-annihilator",
                 "kappa-maps-centralizer-onto-annihilator-of-ad-image", ann_ok,
                 documented_bad, "exhaustive over the basis per sample");
    }
    try {
      if (!ctx.weyl_available) throw WeylTooLarge("Weyl group exceeds the configured cap");
      RsAuditReport rs;
      if (p == 0) {
        rs = rs_audit_char0(ctx.algebra, cfg.samples, cfg.seed, cfg.weyl_cap, &ctx.weyl);
      } else {
        FieldModel model = make_field_model(ctx.algebra, p);
        rs = rs_audit(model, cfg.samples, cfg.seed, profile, cfg.weyl_cap, &ctx.weyl);
      }
      if (!rs.applicable) {
        em.emit("centralizer/rs-audit", "regular-semisimple-stabilizer-is-the-torus",
                CheckStatus::NotApplicable, rs.not_applicable_reason);
      } else {
        CheckResult& r = em.verdict(
            "centralizer/rs-audit", "regular-semisimple-stabilizer-is-the-torus",
            rs.pass(), documented_bad,
            std::to_string(rs.members) + " of " + std::to_string(rs.samples) +
                " samples landed in the regular semisimple locus");
        if (!rs.pass()) {
          r.witness["centralizer_failures"] = std::to_string(rs.centralizer_failures);
          r.witness["weyl_fixed_points"] = std::to_string(rs.weyl_fixed_point_failures);
        }
      }
    } catch (const WeylTooLarge& e) {
      em.emit("centralizer/rs-audit", "regular-semisimple-stabilizer-is-the-torus",
              CheckStatus::NotApplicable, e.what());
    }
  }

  if (wants(cfg, "groth")) {
    if (!ctx.datum.is_single_gl()) {
      em.emit("groth/fiber-counts", "flag-fiber-count-matches-torus-fiber",
              CheckStatus::NotApplicable, "flag enumeration is implemented for GL factors");
    } else if (p == 0) {
      em.emit("groth/fiber-counts", "flag-fiber-count-matches-torus-fiber",
              CheckStatus::NotApplicable, "point counts live over finite fields");
    } else {
      const std::size_t n = static_cast<std::size_t>(ctx.datum.factors[0].spec.rank);
      if (n > 3 || p > 7) {
        em.emit("groth/fiber-counts", "flag-fiber-count-matches-torus-fiber",
                CheckStatus::NotApplicable, "outside the brute-force envelope n<=3, q<=7");
      } else {
        GrothFiberReport rep = groth_fiber_audit(n, p, cfg.groth_samples, cfg.seed);
        CheckResult& r = em.verdict(
            "groth/fiber-counts", "flag-fiber-count-matches-torus-fiber", rep.pass(), false,
            std::to_string(rep.samples) + " split regular samples (" +
                std::to_string(rep.discarded_nonsplit) + " non-split discarded); " +
                "principal nilpotent fiber is a single flag");
        if (!rep.pass() && !rep.witnesses.empty()) {
          r.witness["matrix"] = join_u64(rep.witnesses[0].entries);
          r.witness["flags"] = std::to_string(rep.witnesses[0].flags);
          r.witness["torus_fiber"] = std::to_string(rep.witnesses[0].torus_fiber);
        }
      }
    }
  }

  if (wants(cfg, "waction")) {
    if (!ctx.datum.is_single_sc()) {
      em.emit("waction/twisted-action", "twisted-reflections-satisfy-coxeter-relations",
              CheckStatus::NotApplicable,
              "needs a single simply connected quasi-simple factor");
    } else if (p == 0 || !is_very_good_prime(ctx.datum, p)) {
      em.emit("waction/twisted-action", "twisted-reflections-satisfy-coxeter-relations",
              CheckStatus::NotApplicable,
              p == 0 ? "the truncated module is built modulo a prime"
                     : "p=" + std::to_string(p) + " is not very good for " + group);
    } else {
      GrForm gf = gr_form(ctx.datum);
      WactionAudit audit =
          waction_audit(ctx.algebra, gf, p, cfg.degree, cfg.seed, 8, cfg.waction_rank_cap);
      if (!audit.applicable) {
        em.emit("waction/twisted-action", "twisted-reflections-satisfy-coxeter-relations",
                CheckStatus::NotApplicable, audit.not_applicable_reason);
        em.verdict("waction/tau-mod-p", "tau-invertible-modulo-very-good-primes",
                   tau_root_audit(ctx.datum, gf, p).pass(p), documented_bad,
                   "cleared matrix invertible mod p");
        return;
      }
      CheckResult& r = em.verdict(
          "waction/twisted-action", "twisted-reflections-satisfy-coxeter-relations",
          audit.pass(), documented_bad,
          std::to_string(audit.involution_checked) + " involution and " +
              std::to_string(audit.braid_checked) + " braid checks at degree " +
              std::to_string(cfg.degree));
      if (!audit.pass()) {
        r.witness["involution"] = audit.involution_pass ? "ok" : "failed";
        r.witness["braid"] = audit.braid_pass ? "ok" : "failed";
        r.witness["scalar_braid"] = audit.scalar_braid_pass ? "ok" : "failed";
        r.witness["formula_equivalence"] = audit.formula_equivalence_pass ? "ok" : "failed";
        r.witness["invariant_linearity"] = audit.invariant_linearity_pass ? "ok" : "failed";
      }
      TauRootAudit tau = tau_root_audit(ctx.datum, gf, p);
      em.verdict("waction/tau-mod-p", "tau-invertible-modulo-very-good-primes",
                 tau.pass(p), documented_bad, "cleared matrix invertible mod p");
    }
  }
}

} // namespace

VerificationReport run_suite(const SuiteConfig& config) {
  for (const std::string& s : config.suites) {
    bool known = false;
    for (const char* name : kSuiteNames)
      if (s == name) known = true;
    if (!known) throw ConfigError("unknown suite '" + s + "'");
  }
  if (config.groups.empty()) throw ConfigError("no groups requested");
  for (std::uint64_t p : config.primes)
    if (p != 0 && !is_prime_u64(p))
      throw ConfigError("characteristic " + std::to_string(p) + " is not 0 or prime");

  VerificationReport report;
  report.version = kkit_version();
  report.config = config;

  std::size_t threads = config.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("KKIT_THREADS")) threads = std::strtoul(env, nullptr, 10);
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
  }

  struct Task {
    std::function<std::vector<CheckResult>()> run;
    std::vector<CheckResult> results;
    double ms = 0.0;
  };
  std::vector<Task> tasks;

  std::vector<GroupContext> contexts(config.groups.size());
  for (std::size_t g = 0; g < config.groups.size(); ++g)
    contexts[g] = build_context(config, config.groups[g]);

  for (std::size_t g = 0; g < config.groups.size(); ++g) {
    const std::string& group = config.groups[g];
    const GroupContext& ctx = contexts[g];
    if (!ctx.build_error.empty()) {
      Task t;
      t.run = [&group, &ctx]() {
        CheckResult r;
        r.group = group;
        r.prime = -1;
        r.check = "build";
        r.statement = "group-context-construction";
        r.status = CheckStatus::Fail;
        r.detail = ctx.build_error;
        r.witness["error"] = ctx.build_error;
        return std::vector<CheckResult>{r};
      };
      tasks.push_back(std::move(t));
      continue;
    }
    {
      Task t;
      const SuiteConfig* cfg = &config;
      t.run = [cfg, &group, &ctx]() {
        std::vector<CheckResult> out;
        group_level_checks(*cfg, group, ctx, out);
        return out;
      };
      tasks.push_back(std::move(t));
    }
    for (std::uint64_t p : config.primes) {
      Task t;
      const SuiteConfig* cfg = &config;
      t.run = [cfg, &group, &ctx, p]() {
        std::vector<CheckResult> out;
        prime_level_checks(*cfg, group, ctx, p, out);
        return out;
      };
      tasks.push_back(std::move(t));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      auto start = std::chrono::steady_clock::now();
      try {
        tasks[i].results = tasks[i].run();
      } catch (const std::exception& e) {
        CheckResult r;
        r.check = "internal";
        r.statement = "check-execution";
        r.status = CheckStatus::Fail;
        r.detail = e.what();
        r.witness["error"] = e.what();
        tasks[i].results = {r};
      }
      tasks[i].ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i + 1 < threads && i + 1 < tasks.size(); ++i)
    pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  for (Task& t : tasks)
    for (CheckResult& r : t.results) {
      if (config.emit_timings && r.time_ms == 0.0)
        r.time_ms = t.ms / std::max<std::size_t>(t.results.size(), 1);
      // failures always carry a witness
      if ((r.status == CheckStatus::Fail || r.status == CheckStatus::ExpectedFail) &&
          r.witness.empty())
        r.witness["detail"] = r.detail.empty() ? r.check : r.detail;
      report.checks.push_back(std::move(r));
    }
  return report;
}

std::string emit_torsion_tables(const std::vector<std::string>& specs) {
  using json = nlohmann::ordered_json;
  json root;
  root["schema"] = "kkit-torsion-tables/1";
  root["version"] = kkit_version();
  json tables = json::array();
  for (const std::string& spec : specs) {
    RootDatum rd = build_root_datum(spec);
    ChevalleyAlgebra alg = build_chevalley_algebra(rd);
    SpringerTorsionReport rep = springer_torsion_report(alg);
    json t;
    t["group"] = spec;
    json degs = json::array();
    for (const SpringerDegreeReport& d : rep.degrees) {
      json e;
      e["degree"] = d.degree;
      e["dim_from"] = d.dim_from;
      e["dim_to"] = d.dim_to;
      e["injective_over_Q"] = d.injective_over_q;
      e["torsion_primes"] = d.torsion_primes;
      degs.push_back(std::move(e));
    }
    t["degrees"] = std::move(degs);
    t["derived_n"] = rep.derived_n.str();
    t["slice_ring_n"] = rep.slice_n.str();
    t["very_good_product"] = very_good_product(rd).str();
    t["matches_very_good_product"] = rep.derived_n == very_good_product(rd);
    t["torsion_within_bad"] = rep.torsion_within_bad;
    tables.push_back(std::move(t));
  }
  root["tables"] = std::move(tables);
  return root.dump(2) + "\n";
}

} // namespace kkit
