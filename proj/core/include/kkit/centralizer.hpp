#pragma once

#include "kkit/quotient.hpp"
#include "kkit/slice.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kkit {

// The r x r matrix of g_x -> g -> g* -> s* at a slice point x: entries
// kappa(g_x basis, complement basis). The fiber passes iff invertible.
struct CotangentCertificate {
  std::vector<std::uint64_t> coeffs; // slice coordinates of x
  FpMatrix pairing;
  std::uint64_t det = 0;
  bool pass = false;
};

CotangentCertificate cotangent_iso_check(const FieldModel& model, const Slice& slice,
                                         const KappaForm& kappa, const FpVec& coeffs,
                                         const ConditionProfile& profile);

// characteristic-zero fiber: same composition with exact rational
// arithmetic; pass iff the pairing determinant is nonzero
struct CotangentCertificateRat {
  RatMatrix pairing;
  Rat det;
  bool pass = false;
};
CotangentCertificateRat cotangent_iso_check_rat(const ChevalleyAlgebra& alg,
                                                const Slice& slice, const KappaForm& kappa,
                                                const IntVec& coeffs);

struct AnnihilatorCheck {
  bool pass = false;
  bool dims_match = false;   // dim g_x = dim g - rank ad(x)
  bool annihilates = false;  // kappa(g_x, [x, g]) = 0, exhaustive over the basis
};
AnnihilatorCheck kappa_annihilator_check(const FieldModel& model, const KappaForm& kappa,
                                         const FpVec& x);
AnnihilatorCheck kappa_annihilator_check_rat(const ChevalleyAlgebra& alg,
                                             const KappaForm& kappa, const IntVec& x);

struct RsAuditReport {
  bool applicable = false;
  std::string not_applicable_reason;
  std::size_t samples = 0;
  std::size_t members = 0; // samples that landed in t_rs
  std::size_t centralizer_failures = 0;
  std::size_t weyl_fixed_point_failures = 0;
  bool pass() const {
    return applicable && centralizer_failures == 0 && weyl_fixed_point_failures == 0;
  }
};

// Samples x in t(F_p); classifies t_rs membership by d(alpha)(x) != 0 for
// all roots; members must have g_x = t and no nontrivial Weyl fixed
// point. Membership counts are reported so vacuous passes are visible.
RsAuditReport rs_audit(const FieldModel& model, std::size_t n_samples, std::uint64_t seed,
                       const ConditionProfile& profile,
                       std::uint64_t weyl_cap = kDefaultWeylCap,
                       const std::vector<IntMatrix>* weyl = nullptr);

// characteristic-zero variant with bounded integer coordinates
RsAuditReport rs_audit_char0(const ChevalleyAlgebra& alg, std::size_t n_samples,
                             std::uint64_t seed, std::uint64_t weyl_cap = kDefaultWeylCap,
                             const std::vector<IntMatrix>* weyl = nullptr);

} // namespace kkit
