#include "kkit/slice.hpp"

#include "kkit/errors.hpp"
#include "kkit/smith.hpp"

#include <algorithm>

namespace kkit {

Slice integral_complement(const ChevalleyAlgebra& alg) {
  SpringerTorsionReport rep = springer_torsion_report(alg);
  Slice s;
  s.working_n = rep.slice_n;
  PrincipalNilpotent pn = principal_nilpotent(alg);
  s.e = pn.e;

  // degreewise: complete im(t_{i-1}) inside g^i, for i <= 0
  for (const auto& [deg, basis] : alg.graded) {
    if (deg > 0) continue;
    IntMatrix image(basis.size(), 0);
    if (alg.graded.count(deg - 1)) image = springer_map(alg, deg - 1);
    std::vector<std::size_t> chosen =
        integral_basis_complement(image, basis.size(), s.working_n);
    for (std::size_t k : chosen) {
      s.complement_basis.push_back(basis[k]);
      s.weights.push_back(2 * deg - 2);
    }
  }

  if (s.complement_basis.size() != alg.rank())
    throw NoIntegralComplement("complement dimension differs from the rank");

  // invariant: b = s + [e, n] with unit determinant over Z[1/N]
  std::vector<std::size_t> b_basis;
  std::vector<std::size_t> n_basis;
  for (const auto& [deg, basis] : alg.graded) {
    if (deg > 0) continue;
    for (std::size_t i : basis) {
      b_basis.push_back(i);
      if (deg < 0) n_basis.push_back(i);
    }
  }
  std::vector<std::size_t> pos_in_b(alg.dim, SIZE_MAX);
  for (std::size_t k = 0; k < b_basis.size(); ++k) pos_in_b[b_basis[k]] = k;

  IntMatrix assembled(b_basis.size(), b_basis.size());
  std::size_t col = 0;
  for (std::size_t idx : s.complement_basis) assembled(pos_in_b[idx], col++) = 1;
  for (std::size_t y : n_basis) {
    IntVec v(alg.dim, 0);
    v[y] = 1;
    IntVec img = bracket(alg, s.e, v);
    for (std::size_t i = 0; i < alg.dim; ++i)
      if (img[i] != 0) {
        if (pos_in_b[i] == SIZE_MAX)
          throw StructureConstantError("[e, n] escaped the Borel");
        assembled(pos_in_b[i], col) = img[i];
      }
    ++col;
  }
  s.assembled_det = det_bareiss(assembled);
  if (s.assembled_det == 0)
    throw NoIntegralComplement("assembled slice basis is singular");
  for (std::uint64_t p : prime_factors(s.assembled_det))
    if (s.working_n % Int(p) != 0)
      throw NoIntegralComplement("assembled slice basis has non-unit determinant " +
                                 s.assembled_det.str());
  return s;
}

WeightCheck slice_weight_check(const Slice& slice, const RootDatum& rd) {
  WeightCheck wc;
  wc.slice_weights = slice.weights;
  std::sort(wc.slice_weights.begin(), wc.slice_weights.end());
  HeightsAndExponents he = heights_and_exponents(rd);
  for (int d : he.merged_degrees) wc.expected.push_back(-2L * d);
  std::sort(wc.expected.begin(), wc.expected.end());
  wc.pass = wc.slice_weights == wc.expected;
  return wc;
}

FieldModel make_field_model(const ChevalleyAlgebra& alg, std::uint64_t p) {
  if (p != 0 && !is_prime_u64(p)) throw ConfigError("characteristic must be 0 or prime");
  FieldModel m;
  m.alg = &alg;
  m.p = p;
  if (p > 0) {
    GF f(p);
    for (std::size_t i = 0; i < alg.dim; ++i)
      m.ad_basis_fp.push_back(reduce_mod(ad_basis_matrix(alg, i), f));
  }
  return m;
}

FpMatrix ad_fp(const FieldModel& model, const FpVec& x) {
  GF f(model.p);
  FpMatrix out(model.dim(), model.dim());
  for (std::size_t i = 0; i < model.dim(); ++i) {
    if (x[i] == 0) continue;
    const FpMatrix& a = model.ad_basis_fp[i];
    for (std::size_t r = 0; r < model.dim(); ++r)
      for (std::size_t c = 0; c < model.dim(); ++c)
        out(r, c) = f.add(out(r, c), f.mul(x[i], a(r, c)));
  }
  return out;
}

FpMatrix centralizer_fp(const FieldModel& model, const FpVec& x) {
  GF f(model.p);
  return kernel_fp(ad_fp(model, x), f);
}

RatMatrix centralizer_rat(const FieldModel& model, const IntVec& x) {
  return kernel_rat(to_rational(ad_matrix(*model.alg, x)));
}

FpVec slice_point_fp(const FieldModel& model, const Slice& slice, const FpVec& coeffs) {
  GF f(model.p);
  FpVec x(model.dim(), 0);
  for (std::size_t i = 0; i < model.dim(); ++i) x[i] = f.from_int(slice.e[i]);
  for (std::size_t k = 0; k < slice.complement_basis.size(); ++k)
    x[slice.complement_basis[k]] = f.add(x[slice.complement_basis[k]], coeffs[k]);
  return x;
}

IntVec slice_point_int(const ChevalleyAlgebra& alg, const Slice& slice,
                       const IntVec& coeffs) {
  (void)alg;
  IntVec x = slice.e;
  for (std::size_t k = 0; k < slice.complement_basis.size(); ++k)
    x[slice.complement_basis[k]] += coeffs[k];
  return x;
}

namespace {

void audit_sample_fp(const FieldModel& model, const Slice& slice, const FpVec& coeffs,
                     std::size_t sample_index, std::vector<RegularityFailure>& failures) {
  const ChevalleyAlgebra& alg = *model.alg;
  GF f(model.p);
  const std::size_t dim = alg.dim;
  const std::size_t r = alg.rank();
  FpVec x = slice_point_fp(model, slice, coeffs);
  FpMatrix adx = ad_fp(model, x);

  auto fail = [&](const char* what) {
    RegularityFailure rf;
    rf.sample = sample_index;
    rf.check = what;
    for (std::uint64_t c : coeffs) rf.coeffs.push_back(std::to_string(c));
    failures.push_back(std::move(rf));
  };

  // (a) dim g_x = r
  std::size_t rank_ad = rank_fp(adx, f);
  if (dim - rank_ad != r) {
    fail("centralizer-dim");
    return;
  }

  // (b) g = s + [x, g]: complement columns joined with ad(x) span everything
  FpMatrix joined(dim, r + dim);
  for (std::size_t k = 0; k < r; ++k) joined(slice.complement_basis[k], k) = 1;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) joined(i, r + j) = adx(i, j);
  if (rank_fp(joined, f) != dim) fail("direct-sum");

  // (c) (y, v) -> [y, x] + v is a bijection n + s -> b; at x = e this is
  // the differential at (1, e) of the U x S -> Y action map
  std::vector<std::size_t> b_basis, n_basis;
  for (const auto& [deg, basis] : alg.graded) {
    if (deg > 0) continue;
    for (std::size_t i : basis) {
      b_basis.push_back(i);
      if (deg < 0) n_basis.push_back(i);
    }
  }
  std::vector<std::size_t> pos_in_b(dim, SIZE_MAX);
  for (std::size_t k = 0; k < b_basis.size(); ++k) pos_in_b[b_basis[k]] = k;
  FpMatrix psi(b_basis.size(), b_basis.size());
  std::size_t col = 0;
  for (std::size_t y : n_basis) {
    // column [y, x] = -adx * e_y
    for (std::size_t i = 0; i < dim; ++i) {
      if (adx(i, y) == 0) continue;
      if (pos_in_b[i] == SIZE_MAX) {
        fail("psi-differential"); // [n, x] escaped b: impossible on S
        return;
      }
      psi(pos_in_b[i], col) = f.neg(adx(i, y));
    }
    ++col;
  }
  for (std::size_t k = 0; k < r; ++k) psi(pos_in_b[slice.complement_basis[k]], col++) = 1;
  if (rank_fp(psi, f) != b_basis.size()) fail("psi-differential");
}

void audit_sample_rat(const ChevalleyAlgebra& alg, const Slice& slice, const IntVec& coeffs,
                      std::size_t sample_index, std::vector<RegularityFailure>& failures) {
  const std::size_t dim = alg.dim;
  const std::size_t r = alg.rank();
  IntVec x = slice_point_int(alg, slice, coeffs);
  IntMatrix adx = ad_matrix(alg, x);

  auto fail = [&](const char* what) {
    RegularityFailure rf;
    rf.sample = sample_index;
    rf.check = what;
    for (const Int& c : coeffs) rf.coeffs.push_back(c.str());
    failures.push_back(std::move(rf));
  };

  std::size_t rank_ad = rank_int(adx);
  if (dim - rank_ad != r) {
    fail("centralizer-dim");
    return;
  }
  IntMatrix joined(dim, r + dim);
  for (std::size_t k = 0; k < r; ++k) joined(slice.complement_basis[k], k) = 1;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) joined(i, r + j) = adx(i, j);
  if (rank_int(joined) != dim) fail("direct-sum");

  std::vector<std::size_t> b_basis, n_basis;
  for (const auto& [deg, basis] : alg.graded) {
    if (deg > 0) continue;
    for (std::size_t i : basis) {
      b_basis.push_back(i);
      if (deg < 0) n_basis.push_back(i);
    }
  }
  std::vector<std::size_t> pos_in_b(dim, SIZE_MAX);
  for (std::size_t k = 0; k < b_basis.size(); ++k) pos_in_b[b_basis[k]] = k;
  IntMatrix psi(b_basis.size(), b_basis.size());
  std::size_t col = 0;
  for (std::size_t y : n_basis) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (adx(i, y) == 0) continue;
      if (pos_in_b[i] == SIZE_MAX) {
        fail("psi-differential");
        return;
      }
      psi(pos_in_b[i], col) = -adx(i, y);
    }
    ++col;
  }
  for (std::size_t k = 0; k < r; ++k) psi(pos_in_b[slice.complement_basis[k]], col++) = 1;
  if (det_bareiss(psi) == 0) fail("psi-differential");
}

} // namespace

RegularityAudit regularity_audit(const FieldModel& model, const Slice& slice,
                                 std::size_t n_samples, std::uint64_t seed,
                                 const ConditionProfile& profile, bool strict) {
  RegularityAudit audit;
  if (model.p == 0)
    return regularity_audit_char0(*model.alg, slice, n_samples, seed);
  if (!profile.c3) {
    if (strict)
      throw ConditionViolation("regularity audit requires (C3); it fails at p=" +
                               std::to_string(model.p) + ": " + profile.witness);
    audit.applicable = false;
    audit.not_applicable_reason =
        "(C3) fails at p=" + std::to_string(model.p) + " (" + profile.witness + ")";
    return audit;
  }
  audit.applicable = true;

  const std::size_t r = model.alg->rank();
  FpVec zero(r, 0);
  audit_sample_fp(model, slice, zero, 0, audit.failures); // x = e
  audit.e_checked = true;

  for (std::size_t s = 1; s <= n_samples; ++s) {
    SplitMix64 rng(mix_seed(seed, s));
    FpVec coeffs(r);
    for (std::size_t k = 0; k < r; ++k) coeffs[k] = rng.below(model.p);
    audit_sample_fp(model, slice, coeffs, s, audit.failures);
  }
  audit.samples_run = n_samples + 1;
  return audit;
}

RegularityAudit regularity_audit_char0(const ChevalleyAlgebra& alg, const Slice& slice,
                                       std::size_t n_samples, std::uint64_t seed) {
  RegularityAudit audit;
  audit.applicable = true;
  const std::size_t r = alg.rank();

  IntVec zero(r, 0);
  audit_sample_rat(alg, slice, zero, 0, audit.failures);
  audit.e_checked = true;

  constexpr std::uint64_t kWindow = 1 << 16; // char-0 sampling envelope
  for (std::size_t s = 1; s <= n_samples; ++s) {
    SplitMix64 rng(mix_seed(seed, s));
    IntVec coeffs(r);
    for (std::size_t k = 0; k < r; ++k)
      coeffs[k] = Int(rng.below(2 * kWindow)) - Int(kWindow);
    audit_sample_rat(alg, slice, coeffs, s, audit.failures);
  }
  audit.samples_run = n_samples + 1;
  return audit;
}

} // namespace kkit
