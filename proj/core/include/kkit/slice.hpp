#pragma once

#include "kkit/chevalley.hpp"
#include "kkit/root_datum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kkit {

// Integral Kostant slice S = e + s. The complement s is a union of
// graded pieces spanned by Chevalley basis vectors, chosen degreewise as
// the lexicographically minimal standard complement of im(t_{i-1}), so
// two runs on the same input select identical index sets.
struct Slice {
  IntVec e;
  std::vector<std::size_t> complement_basis; // algebra basis indices spanning s
  std::vector<long> weights;                 // Gm-weight 2*deg - 2 per vector
  Int working_n = 1;                         // s works over Z[1/N]
  Int assembled_det = 0;                     // det of [s | [e, n]] on b
};

Slice integral_complement(const ChevalleyAlgebra& alg);

struct WeightCheck {
  bool pass = false;
  std::vector<long> slice_weights;   // sorted
  std::vector<long> expected;        // {-2 d_i}, sorted
};
WeightCheck slice_weight_check(const Slice& slice, const RootDatum& rd);

// The algebra over the prime field of characteristic p (p = 0 means the
// rationals); ad matrices of basis vectors are cached mod p.
struct FieldModel {
  const ChevalleyAlgebra* alg = nullptr;
  std::uint64_t p = 0;
  std::vector<FpMatrix> ad_basis_fp; // populated when p > 0

  std::size_t dim() const { return alg->dim; }
};
FieldModel make_field_model(const ChevalleyAlgebra& alg, std::uint64_t p);

using FpVec = std::vector<std::uint64_t>;

FpMatrix ad_fp(const FieldModel& model, const FpVec& x);
// kernel of ad(x) over the model's field
FpMatrix centralizer_fp(const FieldModel& model, const FpVec& x);
RatMatrix centralizer_rat(const FieldModel& model, const IntVec& x);

// Slice point e + sum coeff_k v_k over the model's field.
FpVec slice_point_fp(const FieldModel& model, const Slice& slice, const FpVec& coeffs);
IntVec slice_point_int(const ChevalleyAlgebra& alg, const Slice& slice,
                       const IntVec& coeffs);

struct RegularityFailure {
  std::size_t sample = 0;
  std::string check;                // "centralizer-dim", "direct-sum", "psi-differential"
  std::vector<std::string> coeffs;  // slice coordinates of the witness
};

struct RegularityAudit {
  bool applicable = false;
  std::string not_applicable_reason;
  std::size_t samples_run = 0;
  bool e_checked = false; // x = e always audited first
  std::vector<RegularityFailure> failures;
  bool pass() const { return applicable && failures.empty(); }
};

// For each sampled x in S(F_p): (a) dim g_x = r, (b) g = s + [x,g] as a
// direct-sum rank identity, (c) the map n + s -> b, (y,v) -> [y,x] + v,
// is bijective (at x = e this is the differential of the U x S -> Y
// action map at (1,e)). Sampling is seed-split per sample index.
RegularityAudit regularity_audit(const FieldModel& model, const Slice& slice,
                                 std::size_t n_samples, std::uint64_t seed,
                                 const ConditionProfile& profile, bool strict = false);

// Rational-coefficient variant used for characteristic 0 runs; samples
// integer coordinates in a fixed bounded window.
RegularityAudit regularity_audit_char0(const ChevalleyAlgebra& alg, const Slice& slice,
                                       std::size_t n_samples, std::uint64_t seed);

} // namespace kkit
