#include "kkit/centralizer.hpp"

#include "kkit/errors.hpp"

namespace kkit {

CotangentCertificate cotangent_iso_check(const FieldModel& model, const Slice& slice,
                                         const KappaForm& kappa, const FpVec& coeffs,
                                         const ConditionProfile& profile) {
  if (model.p == 0) throw ConfigError("cotangent fiber check is a positive-characteristic audit");
  if (!profile.c4)
    throw ConditionViolation("cotangent fiber check requires (C4); it fails at p=" +
                             std::to_string(model.p) +
                             (profile.witness.empty() ? "" : ": " + profile.witness));
  GF f(model.p);
  const std::size_t r = model.alg->rank();

  CotangentCertificate cert;
  cert.coeffs = coeffs;
  FpVec x = slice_point_fp(model, slice, coeffs);
  FpMatrix gx = centralizer_fp(model, x); // columns span g_x

  cert.pairing = FpMatrix(gx.cols(), r);
  for (std::size_t i = 0; i < gx.cols(); ++i) {
    FpVec y = gx.col(i);
    for (std::size_t j = 0; j < r; ++j) {
      FpVec s(model.dim(), 0);
      s[slice.complement_basis[j]] = 1;
      cert.pairing(i, j) = kappa_pair_fp(kappa, y, s, f);
    }
  }
  if (cert.pairing.rows() != r) {
    cert.det = 0; // x not regular: the composed map cannot be square
    cert.pass = false;
    return cert;
  }
  cert.det = det_fp(cert.pairing, f);
  cert.pass = cert.det != 0;
  return cert;
}

CotangentCertificateRat cotangent_iso_check_rat(const ChevalleyAlgebra& alg,
                                                const Slice& slice, const KappaForm& kappa,
                                                const IntVec& coeffs) {
  CotangentCertificateRat cert;
  IntVec x = slice_point_int(alg, slice, coeffs);
  RatMatrix gx = kernel_rat(to_rational(ad_matrix(alg, x)));
  const std::size_t r = alg.rank();
  cert.pairing = RatMatrix(gx.cols(), r);
  RatMatrix gram = to_rational(kappa.gram);
  for (std::size_t i = 0; i < gx.cols(); ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rat acc = 0;
      for (std::size_t k = 0; k < alg.dim; ++k)
        acc += gx(k, i) * gram(k, slice.complement_basis[j]);
      cert.pairing(i, j) = acc;
    }
  if (cert.pairing.rows() != r) {
    cert.pass = false;
    return cert;
  }
  // determinant by elimination over Q
  RatMatrix m = cert.pairing;
  cert.det = 1;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t piv = k;
    while (piv < r && m(piv, k) == 0) ++piv;
    if (piv == r) {
      cert.det = 0;
      break;
    }
    if (piv != k) {
      m.swap_rows(piv, k);
      cert.det = -cert.det;
    }
    cert.det *= m(k, k);
    for (std::size_t i = k + 1; i < r; ++i) {
      if (m(i, k) == 0) continue;
      Rat c = m(i, k) / m(k, k);
      for (std::size_t j = k; j < r; ++j) m(i, j) -= c * m(k, j);
    }
  }
  cert.pass = cert.det != 0;
  return cert;
}

AnnihilatorCheck kappa_annihilator_check_rat(const ChevalleyAlgebra& alg,
                                             const KappaForm& kappa, const IntVec& x) {
  IntMatrix adx = ad_matrix(alg, x);
  RatMatrix gx = kernel_rat(to_rational(adx));
  AnnihilatorCheck out;
  out.dims_match = gx.cols() == alg.dim - rank_int(adx);
  RatMatrix lhs = mat_mul(gx.transposed(),
                          mat_mul(to_rational(kappa.gram), to_rational(adx)));
  out.annihilates = true;
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (lhs(i, j) != 0) out.annihilates = false;
  out.pass = out.dims_match && out.annihilates;
  return out;
}

AnnihilatorCheck kappa_annihilator_check(const FieldModel& model, const KappaForm& kappa,
                                         const FpVec& x) {
  GF f(model.p);
  const std::size_t dim = model.dim();
  FpMatrix adx = ad_fp(model, x);
  FpMatrix gx = centralizer_fp(model, x);

  AnnihilatorCheck out;
  out.dims_match = gx.cols() == dim - rank_fp(adx, f);

  // kappa(y, [x, z]) = 0 for every kernel vector y and basis vector z:
  // equivalently gx^T * Gram * adx = 0
  FpMatrix gram = reduce_mod(kappa.gram, f);
  FpMatrix lhs = mat_mul_fp(gx.transposed(), mat_mul_fp(gram, adx, f), f);
  out.annihilates = true;
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (lhs(i, j) != 0) out.annihilates = false;
  out.pass = out.dims_match && out.annihilates;
  return out;
}

RsAuditReport rs_audit_char0(const ChevalleyAlgebra& alg, std::size_t n_samples,
                             std::uint64_t seed, std::uint64_t weyl_cap,
                             const std::vector<IntMatrix>* weyl_in) {
  RsAuditReport rep;
  rep.applicable = true;
  const RootDatum& rd = alg.datum;
  std::vector<IntMatrix> weyl_own;
  if (!weyl_in) weyl_own = weyl_elements(rd, weyl_cap);
  const std::vector<IntMatrix>& weyl = weyl_in ? *weyl_in : weyl_own;

  constexpr std::uint64_t kWindow = 1 << 12;
  for (std::size_t s = 0; s < n_samples; ++s) {
    SplitMix64 rng(mix_seed(seed, s));
    IntVec t_coords(rd.rank);
    for (auto& v : t_coords) v = Int(rng.below(2 * kWindow)) - Int(kWindow);

    bool member = true;
    for (std::size_t ri : rd.positive_roots)
      if (pair_char_cochar(rd.roots[ri].char_coords, t_coords) == 0) {
        member = false;
        break;
      }
    ++rep.samples;
    if (!member) continue;
    ++rep.members;

    IntVec x(alg.dim, 0);
    for (std::size_t k = 0; k < rd.rank; ++k) x[alg.cartan_offset + k] = t_coords[k];
    RatMatrix gx = kernel_rat(to_rational(ad_matrix(alg, x)));
    bool ok = gx.cols() == rd.rank;
    if (ok)
      for (std::size_t c = 0; c < gx.cols() && ok; ++c)
        for (std::size_t i = 0; i < alg.cartan_offset; ++i)
          if (gx(i, c) != 0) {
            ok = false;
            break;
          }
    if (!ok) ++rep.centralizer_failures;

    for (const IntMatrix& w : weyl) {
      if (w == IntMatrix::identity(rd.rank)) continue;
      if (mat_vec(w, t_coords) == t_coords) {
        ++rep.weyl_fixed_point_failures;
        break;
      }
    }
  }
  return rep;
}

RsAuditReport rs_audit(const FieldModel& model, std::size_t n_samples, std::uint64_t seed,
                       const ConditionProfile& profile, std::uint64_t weyl_cap,
                       const std::vector<IntMatrix>* weyl_in) {
  RsAuditReport rep;
  if (model.p == 0) return rs_audit_char0(*model.alg, n_samples, seed, weyl_cap, weyl_in);
  // Lemma hypotheses: (C1) and no p-torsion in the cocharacter quotient.
  if (!profile.c1 || !profile.cochar_torsion_free) {
    rep.applicable = false;
    rep.not_applicable_reason =
        std::string(!profile.c1 ? "(C1)" : "cocharacter torsion-freeness") +
        " fails at p=" + std::to_string(model.p) +
        (profile.witness.empty() ? "" : " (" + profile.witness + ")");
    return rep;
  }
  rep.applicable = true;

  const ChevalleyAlgebra& alg = *model.alg;
  const RootDatum& rd = alg.datum;
  GF f(model.p);
  std::vector<IntMatrix> weyl_own;
  if (!weyl_in) weyl_own = weyl_elements(rd, weyl_cap);
  const std::vector<IntMatrix>& weyl = weyl_in ? *weyl_in : weyl_own;
  std::vector<FpMatrix> weyl_fp;
  for (const IntMatrix& w : weyl) weyl_fp.push_back(reduce_mod(w, f));

  for (std::size_t s = 0; s < n_samples; ++s) {
    SplitMix64 rng(mix_seed(seed, s));
    std::vector<std::uint64_t> t_coords(rd.rank);
    for (auto& v : t_coords) v = rng.below(model.p);

    // t_rs membership: d(alpha)(x) != 0 for all roots
    bool member = true;
    for (std::size_t ri : rd.positive_roots) {
      std::uint64_t val = 0;
      for (std::size_t k = 0; k < rd.rank; ++k)
        val = f.add(val, f.mul(f.from_int(rd.roots[ri].char_coords[k]), t_coords[k]));
      if (val == 0) {
        member = false;
        break;
      }
    }
    ++rep.samples;
    if (!member) continue;
    ++rep.members;

    // (a) g_x = t: kernel of ad(x) has dimension r and lies in degree 0
    FpVec x(model.dim(), 0);
    for (std::size_t k = 0; k < rd.rank; ++k) x[alg.cartan_offset + k] = t_coords[k];
    FpMatrix gx = centralizer_fp(model, x);
    bool ok = gx.cols() == rd.rank;
    if (ok)
      for (std::size_t c = 0; c < gx.cols() && ok; ++c)
        for (std::size_t i = 0; i < alg.cartan_offset; ++i)
          if (gx(i, c) != 0) {
            ok = false;
            break;
          }
    if (!ok) ++rep.centralizer_failures;

    // (b) no nontrivial w fixes x
    for (const FpMatrix& w : weyl_fp) {
      bool identity = true;
      for (std::size_t i = 0; i < rd.rank && identity; ++i)
        for (std::size_t j = 0; j < rd.rank; ++j)
          if (w(i, j) != (i == j ? 1u : 0u)) {
            identity = false;
            break;
          }
      if (identity) continue;
      if (mat_vec_fp(w, t_coords, f) == t_coords) {
        ++rep.weyl_fixed_point_failures;
        break;
      }
    }
  }
  return rep;
}

} // namespace kkit
