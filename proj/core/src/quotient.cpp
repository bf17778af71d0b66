#include "kkit/quotient.hpp"

#include "kkit/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace kkit {

namespace {

// next k-subset of {0..n-1} in lexicographic order
bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] + (k - i) < n) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

template <class T, class Det>
std::vector<T> principal_minor_sums(std::size_t n, Det det_of_subset) {
  std::vector<T> out;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> sub(k);
    for (std::size_t i = 0; i < k; ++i) sub[i] = i;
    T acc = T(0);
    do {
      acc = acc + det_of_subset(sub);
    } while (next_subset(sub, n));
    out.push_back(acc);
  }
  return out;
}

} // namespace

std::vector<std::uint64_t> invariant_map_gl_fp(const FpMatrix& x, const GF& f) {
  const std::size_t n = x.rows();
  auto det_sub = [&](const std::vector<std::size_t>& s) {
    FpMatrix m(s.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) m(i, j) = x(s[i], s[j]);
    return det_fp(m, f);
  };
  std::vector<std::uint64_t> out;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> sub(k);
    for (std::size_t i = 0; i < k; ++i) sub[i] = i;
    std::uint64_t acc = 0;
    do {
      acc = f.add(acc, det_sub(sub));
    } while (next_subset(sub, n));
    out.push_back(acc);
  }
  return out;
}

std::vector<Rat> invariant_map_gl_rat(const RatMatrix& x) {
  const std::size_t n = x.rows();
  auto det_sub = [&](const std::vector<std::size_t>& s) -> Rat {
    // cofactor expansion; minors here are at most 4x4 in practice but
    // handle the general case recursively
    std::function<Rat(std::vector<std::size_t>, std::vector<std::size_t>)> det =
        [&](std::vector<std::size_t> rows, std::vector<std::size_t> cols) -> Rat {
      if (rows.empty()) return Rat(1);
      Rat acc = 0;
      int sign = 1;
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const Rat& pivot = x(rows[0], cols[k]);
        if (pivot != 0) {
          std::vector<std::size_t> r2(rows.begin() + 1, rows.end());
          std::vector<std::size_t> c2 = cols;
          c2.erase(c2.begin() + k);
          acc += sign * pivot * det(r2, c2);
        }
        sign = -sign;
      }
      return acc;
    };
    return det(s, s);
  };
  return principal_minor_sums<Rat>(n, det_sub);
}

namespace {

// (i, j) matrix position of every basis vector of a single-GL algebra
std::vector<std::pair<int, int>> gl_positions(const ChevalleyAlgebra& alg) {
  if (!alg.datum.is_single_gl())
    throw UnsupportedGroup("defining matrix view requires a single GL factor");
  const int n = alg.datum.factors[0].spec.rank;
  std::vector<std::pair<int, int>> pos(alg.dim);
  for (std::size_t r = 0; r < alg.datum.num_roots(); ++r) {
    const Root& root = alg.datum.roots[r];
    int i = -1, j = -1;
    for (int k = 0; k < n; ++k) {
      if (root.char_coords[k] == 1) i = k;
      if (root.char_coords[k] == -1) j = k;
    }
    pos[r] = {i, j};
  }
  for (std::size_t k = 0; k < alg.rank(); ++k)
    pos[alg.cartan_offset + k] = {static_cast<int>(k), static_cast<int>(k)};
  return pos;
}

} // namespace

FpMatrix gl_defining_matrix_fp(const ChevalleyAlgebra& alg, const FpVec& x, const GF& f) {
  const int n = alg.datum.factors[0].spec.rank;
  std::vector<std::pair<int, int>> pos = gl_positions(alg);
  FpMatrix m(n, n);
  for (std::size_t b = 0; b < alg.dim; ++b)
    if (x[b] != 0) m(pos[b].first, pos[b].second) = f.add(m(pos[b].first, pos[b].second), x[b]);
  return m;
}

RatMatrix gl_defining_matrix_rat(const ChevalleyAlgebra& alg, const IntVec& x) {
  const int n = alg.datum.factors[0].spec.rank;
  std::vector<std::pair<int, int>> pos = gl_positions(alg);
  RatMatrix m(n, n);
  for (std::size_t b = 0; b < alg.dim; ++b)
    if (x[b] != 0) m(pos[b].first, pos[b].second) += Rat(x[b]);
  return m;
}

SliceChartAudit slice_chart_audit_gl(const ChevalleyAlgebra& alg, const Slice& slice,
                                     std::uint64_t q) {
  if (!alg.datum.is_single_gl())
    throw UnsupportedGroup("slice chart audit requires a single GL factor");
  const std::size_t n = static_cast<std::size_t>(alg.datum.factors[0].spec.rank);
  if (n > 4 || q > 11) throw BruteForceTooLarge("slice chart envelope is n <= 4, q <= 11");
  if (!is_prime_u64(q)) throw ConfigError("q must be prime");
  GF f(q);
  FieldModel model = make_field_model(alg, q);

  SliceChartAudit audit;
  std::set<std::vector<std::uint64_t>> images;
  FpVec coeffs(n, 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t k = 0; k < n; ++k) {
      coeffs[k] = t % q;
      t /= q;
    }
    FpVec x = slice_point_fp(model, slice, coeffs);
    FpMatrix m = gl_defining_matrix_fp(alg, x, f);
    std::vector<std::uint64_t> image = invariant_map_gl_fp(m, f);
    if (!images.insert(image).second && audit.collision_witness.empty())
      audit.collision_witness.assign(coeffs.begin(), coeffs.end());
    ++audit.points;
  }
  audit.distinct_images = images.size();
  audit.pass = audit.distinct_images == audit.points && audit.points == total;
  return audit;
}

namespace {

struct FactorScale {
  Int num = 1;
  Int den = 1; // gram block = killing block * num / den
  bool direct_gl = false;
};

FactorScale kappa_scale(const GroupFactor& f) {
  FactorScale s;
  if (f.is_gl) {
    s.direct_gl = true;
    return s;
  }
  const int n = f.rank;
  switch (f.type) {
    case CartanType::A: s.den = 2 * (n + 1); break;          // defining rep index 1
    case CartanType::B: s.num = 2; s.den = 2 * (2 * n - 1); break;
    case CartanType::C: s.den = 2 * (n + 1); break;
    case CartanType::D: s.num = 2; s.den = 2 * (2 * n - 2); break;
    case CartanType::E:
    case CartanType::F:
    case CartanType::G: break; // Killing form as-is
  }
  return s;
}

} // namespace

KappaForm kappa_form(const ChevalleyAlgebra& alg, const Int& inverted_n) {
  const std::size_t d = alg.dim;
  const RootDatum& rd = alg.datum;

  // Killing Gram straight from the sparse bracket table:
  // K(b_i, b_j) = sum_k <coefficient of b_k in [b_i, [b_j, b_k]]>
  IntMatrix killing(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Int tr = 0;
      for (std::size_t k = 0; k < d; ++k)
        for (const auto& [l, c] : alg.table[j][k])
          for (const auto& [m, c2] : alg.table[i][l])
            if (m == k) tr += c * c2;
      killing(i, j) = tr;
      killing(j, i) = tr;
    }

  // factor of each basis vector
  std::vector<int> factor_of(d);
  for (std::size_t r = 0; r < rd.num_roots(); ++r) factor_of[r] = rd.roots[r].factor;
  for (std::size_t fi = 0; fi < rd.factors.size(); ++fi)
    for (std::size_t k = 0; k < rd.factors[fi].lattice_rank; ++k)
      factor_of[alg.cartan_offset + rd.factors[fi].lattice_offset + k] =
          static_cast<int>(fi);

  KappaForm kappa;
  kappa.gram = IntMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (factor_of[i] != factor_of[j]) {
        if (killing(i, j) != 0)
          throw StructureConstantError("Killing form mixes factors");
        continue;
      }
      FactorScale s = kappa_scale(rd.factors[factor_of[i]].spec);
      if (s.direct_gl) {
        // trace form on matrix units, computable directly
        continue; // filled below
      }
      Int num = killing(i, j) * s.num;
      if (num % s.den != 0)
        throw StructureConstantError("defining-representation rescale is not integral");
      kappa.gram(i, j) = num / s.den;
    }

  // GL blocks: tr(E_ab E_ce) = d_bc d_ea
  for (std::size_t fi = 0; fi < rd.factors.size(); ++fi) {
    const FactorData& fd = rd.factors[fi];
    if (!fd.spec.is_gl) continue;
    auto position = [&](std::size_t basis) -> std::pair<int, int> {
      if (basis >= alg.cartan_offset) {
        int k = static_cast<int>(basis - alg.cartan_offset - fd.lattice_offset);
        return {k, k};
      }
      const Root& r = rd.roots[basis];
      int a = -1, b = -1;
      for (std::size_t k = 0; k < fd.lattice_rank; ++k) {
        if (r.char_coords[fd.lattice_offset + k] == 1) a = static_cast<int>(k);
        if (r.char_coords[fd.lattice_offset + k] == -1) b = static_cast<int>(k);
      }
      return {a, b};
    };
    std::vector<std::size_t> members;
    for (std::size_t r : fd.roots) members.push_back(r);
    for (std::size_t k = 0; k < fd.lattice_rank; ++k)
      members.push_back(alg.cartan_offset + fd.lattice_offset + k);
    for (std::size_t i : members)
      for (std::size_t j : members) {
        auto [a, b] = position(i);
        auto [c, e] = position(j);
        kappa.gram(i, j) = (b == c && e == a) ? 1 : 0;
      }
  }

  // invariance kappa([x,y],z) + kappa(y,[x,z]) = 0 on all basis triples
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        Int lhs = 0;
        for (const auto& [k, c] : alg.table[x][y]) lhs += c * kappa.gram(k, z);
        for (const auto& [k, c] : alg.table[x][z]) lhs += c * kappa.gram(y, k);
        if (lhs != 0) throw StructureConstantError("invariant form is not invariant");
      }

  kappa.det = det_bareiss(kappa.gram);
  if (kappa.det == 0) throw DegenerateForm("Gram determinant is zero");
  kappa.disc_primes = prime_factors(kappa.det);
  for (std::uint64_t p : kappa.disc_primes)
    if (inverted_n % Int(p) != 0)
      throw DegenerateForm("Gram determinant " + kappa.det.str() +
                           " is not a unit in Z[1/" + inverted_n.str() + "]");
  return kappa;
}

ConditionProfile condition_profile_with_kappa(const ChevalleyAlgebra& alg,
                                              const KappaForm& kappa, std::uint64_t p) {
  return condition_check(alg.datum, p, kappa.det);
}

std::uint64_t kappa_pair_fp(const KappaForm& kappa, const FpVec& x, const FpVec& y,
                            const GF& f) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      acc = f.add(acc, f.mul(f.mul(x[i], y[j]), f.from_int(kappa.gram(i, j))));
    }
  }
  return acc;
}

ChevalleyRestrictionCheck chevalley_restriction_check(std::size_t n, std::uint64_t p,
                                                      std::size_t samples,
                                                      std::uint64_t seed) {
  GF f(p);
  ChevalleyRestrictionCheck out;
  out.samples = samples;
  out.pass = true;
  for (std::size_t s = 0; s < samples; ++s) {
    SplitMix64 rng(mix_seed(seed, s));
    std::vector<std::uint64_t> diag(n);
    for (auto& v : diag) v = rng.below(p);
    FpMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = diag[i];
    std::vector<std::uint64_t> c = invariant_map_gl_fp(m, f);
    // elementary symmetric values by direct expansion of prod (1 + t x_i)
    std::vector<std::uint64_t> e(n + 1, 0);
    e[0] = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = std::min(i + 1, n); k >= 1; --k)
        e[k] = f.add(e[k], f.mul(diag[i], e[k - 1]));
    for (std::size_t k = 1; k <= n; ++k)
      if (c[k - 1] != e[k]) out.pass = false;
  }
  return out;
}

ConjugationInvarianceCheck conjugation_invariance_check(std::size_t n, std::uint64_t p,
                                                        std::size_t samples,
                                                        std::uint64_t seed) {
  GF f(p);
  ConjugationInvarianceCheck out;
  out.samples = samples;
  out.pass = true;
  for (std::size_t s = 0; s < samples; ++s) {
    SplitMix64 rng(mix_seed(seed, s));
    FpMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.below(p);
    // u = exp(c E_ab), a != b: I + c E_ab; u^{-1} = I - c E_ab
    std::size_t a = rng.below(n);
    std::size_t b = rng.below(n);
    if (a == b) b = (b + 1) % n;
    if (n == 1) {
      continue; // nothing to conjugate by
    }
    std::uint64_t c = rng.below(p);
    FpMatrix u = FpMatrix::identity(n);
    FpMatrix uinv = FpMatrix::identity(n);
    u(a, b) = c;
    uinv(a, b) = f.neg(c);
    FpMatrix y = mat_mul_fp(u, mat_mul_fp(x, uinv, f), f);
    if (invariant_map_gl_fp(x, f) != invariant_map_gl_fp(y, f)) out.pass = false;
  }
  return out;
}

} // namespace kkit
