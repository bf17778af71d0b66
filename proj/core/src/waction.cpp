#include "kkit/waction.hpp"

#include "kkit/errors.hpp"

#include <algorithm>
#include <set>

namespace kkit {

GrForm gr_form(const RootDatum& rd) {
  if (!rd.is_single_sc())
    throw UnsupportedGroup("the rescaled pairing needs a single simply connected factor");
  GrForm gf;
  const std::size_t r = rd.rank;

  gf.kil = IntMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Int acc = 0;
      for (const Root& root : rd.roots) acc += root.coroot_coords[i] * root.coroot_coords[j];
      gf.kil(i, j) = acc;
    }

  // highest short root
  int min_len = 4;
  for (const Root& root : rd.roots) min_len = std::min(min_len, root.length_sq);
  long best_height = 0;
  for (std::size_t idx : rd.positive_roots) {
    const Root& root = rd.roots[idx];
    if (root.length_sq == min_len && root.height > best_height) {
      best_height = root.height;
      gf.theta_root = idx;
    }
  }
  const Root& theta = rd.roots[gf.theta_root];
  Int tn = 0;
  for (const Root& root : rd.roots) {
    Int pairing = pair_char_cochar(theta.char_coords, root.coroot_coords);
    tn += pairing * pairing;
  }
  gf.theta_norm = tn;

  gf.tau = RatMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gf.tau(i, j) = Rat(2 * gf.kil(i, j), gf.theta_norm);

  // W-invariance of the Killing-type pairing, on every simple reflection
  for (std::size_t s : rd.simple_roots) {
    IntMatrix w = simple_reflection_char(rd, s);
    IntMatrix lhs = mat_mul(mat_mul(w.transposed(), gf.kil), w);
    if (!(lhs == gf.kil))
      throw StructureConstantError("Killing-type pairing is not W-invariant");
  }
  // <theta, theta>_Gr = 2 by construction; keep the assertion honest
  {
    Rat acc = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        acc += Rat(theta.char_coords[i]) * gf.tau(i, j) * Rat(theta.char_coords[j]);
    // <theta, tau(theta)> = <theta,theta>_Gr
    if (acc != 2) throw StructureConstantError("<theta,theta>_Gr != 2");
  }
  return gf;
}

TauRootAudit tau_root_audit(const RootDatum& rd, const GrForm& gf, std::uint64_t p) {
  if (p != 0 && !is_very_good_prime(rd, p))
    throw ConditionViolation("tau audit requires a very good prime, got " +
                             std::to_string(p));
  TauRootAudit audit;
  const std::size_t r = rd.rank;

  audit.coroot_identity = true;
  audit.differential_identity = true;
  for (const Root& root : rd.roots) {
    for (std::size_t i = 0; i < r; ++i) {
      Rat lhs = 0; // tau(alpha)_i
      for (std::size_t j = 0; j < r; ++j) lhs += gf.tau(i, j) * Rat(root.char_coords[j]);
      if (lhs != Rat(root.length_sq) * Rat(root.coroot_coords[i]))
        audit.coroot_identity = false;
    }
    // (d alpha) o tau as a linear form on t*: row alpha^T tau
    for (std::size_t j = 0; j < r; ++j) {
      Rat lhs = 0;
      for (std::size_t i = 0; i < r; ++i) lhs += Rat(root.char_coords[i]) * gf.tau(i, j);
      if (lhs != Rat(root.length_sq) * Rat(root.coroot_coords[j]))
        audit.differential_identity = false;
    }
  }

  audit.w_equivariant = true;
  for (std::size_t s : rd.simple_roots) {
    RatMatrix wchar = to_rational(simple_reflection_char(rd, s));
    RatMatrix wco = to_rational(simple_reflection_cochar(rd, s));
    RatMatrix lhs = mat_mul(gf.tau, wchar);
    RatMatrix rhs = mat_mul(wco, gf.tau);
    if (!(lhs == rhs)) audit.w_equivariant = false;
  }

  if (p != 0) {
    GF f(p);
    Int lcm = 1;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        Int den = boost::multiprecision::denominator(gf.tau(i, j));
        lcm = lcm / gcd_int(lcm, den) * den;
      }
    if (lcm % Int(p) == 0) {
      audit.invertible_mod_p = false;
    } else {
      FpMatrix cleared(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          Rat scaled = gf.tau(i, j) * Rat(lcm);
          cleared(i, j) = f.from_int(boost::multiprecision::numerator(scaled));
        }
      audit.invertible_mod_p = det_fp(cleared, f) != 0;
    }
  }
  return audit;
}

// --- monomials ---------------------------------------------------------------

MonoKey mono_pack(const std::vector<unsigned>& exps) {
  if (exps.size() > 8) throw ConfigError("monomials support at most 8 variables");
  MonoKey key = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 255) throw TruncationOverflow("monomial exponent exceeds 255");
    key |= static_cast<MonoKey>(exps[i]) << (8 * i);
  }
  return key;
}

std::vector<unsigned> mono_unpack(MonoKey key, std::size_t rank) {
  std::vector<unsigned> exps(rank);
  for (std::size_t i = 0; i < rank; ++i)
    exps[i] = static_cast<unsigned>((key >> (8 * i)) & 0xff);
  return exps;
}

unsigned mono_degree(MonoKey key) {
  unsigned d = 0;
  while (key) {
    d += static_cast<unsigned>(key & 0xff);
    key >>= 8;
  }
  return d;
}

unsigned VPoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, v] : terms) d = std::max(d, mono_degree(m));
  return d;
}

namespace {

bool is_zero(const std::vector<std::uint64_t>& v) {
  for (std::uint64_t x : v)
    if (x) return false;
  return true;
}

void add_term(VPoly& poly, MonoKey m, const std::vector<std::uint64_t>& v, const GF& f) {
  auto it = poly.terms.find(m);
  if (it == poly.terms.end()) {
    if (!is_zero(v)) poly.terms.emplace(m, v);
    return;
  }
  for (std::size_t i = 0; i < v.size(); ++i) it->second[i] = f.add(it->second[i], v[i]);
  if (is_zero(it->second)) poly.terms.erase(it);
}

SPoly spoly_mul(const SPoly& a, const SPoly& b, const GF& f) {
  SPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::uint64_t c = f.mul(ca, cb);
      if (c == 0) continue;
      MonoKey m = ma + mb; // byte-packed exponents add without carry below 256
      auto [it, fresh] = out.emplace(m, c);
      if (!fresh) {
        it->second = f.add(it->second, c);
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

// linear form sum_j row[j] x_j as a scalar polynomial
SPoly linear_form(const std::vector<std::uint64_t>& row, std::size_t rank) {
  SPoly out;
  for (std::size_t j = 0; j < rank; ++j) {
    if (row[j] == 0) continue;
    std::vector<unsigned> e(rank, 0);
    e[j] = 1;
    out.emplace(mono_pack(e), row[j]);
  }
  return out;
}

} // namespace

TwistedModule make_twisted_module(const ChevalleyAlgebra& alg, std::uint64_t p,
                                  unsigned degree_limit, int cap) {
  if (!alg.datum.is_single_sc())
    throw UnsupportedGroup("the twisted module needs a single simply connected factor");
  if (p == 0 || !is_prime_u64(p)) throw ConfigError("the twisted module works mod a prime");
  TwistedModule module;
  module.alg = &alg;
  module.p = p;
  module.dim_v = alg.dim;
  module.rank = alg.rank();
  module.degree_limit = degree_limit;

  GF f(p);
  const RootDatum& rd = alg.datum;
  std::size_t max_unipotent = 0;
  std::size_t max_braid = 2;
  for (std::size_t s = 0; s < rd.simple_roots.size(); ++s) {
    SimpleRootOps ops;
    std::size_t root_idx = rd.simple_roots[s];
    ops.reflection = reduce_mod(simple_reflection_cochar(rd, root_idx), f);
    ops.dalpha.assign(module.rank, 0);
    for (std::size_t k = 0; k < module.rank; ++k)
      ops.dalpha[k] = f.from_int(rd.roots[root_idx].char_coords[k]);
    std::size_t f_idx = rd.negative_of[root_idx];
    for (const IntMatrix& m : divided_power_table(alg, f_idx))
      ops.divided_powers.push_back(reduce_mod(m, f));
    max_unipotent = std::max(max_unipotent, ops.unipotent_degree());
    module.simples.push_back(std::move(ops));
  }
  for (std::size_t i = 0; i < rd.simple_roots.size(); ++i)
    for (std::size_t j = i + 1; j < rd.simple_roots.size(); ++j) {
      Int pr = pair_char_cochar(rd.roots[rd.simple_roots[i]].char_coords,
                                rd.roots[rd.simple_roots[j]].coroot_coords) *
               pair_char_cochar(rd.roots[rd.simple_roots[j]].char_coords,
                                rd.roots[rd.simple_roots[i]].coroot_coords);
      std::size_t m = pr == 0 ? 2 : (pr == 1 ? 3 : (pr == 2 ? 4 : 6));
      max_braid = std::max(max_braid, m);
    }

  if (cap >= 0) {
    module.cap = static_cast<unsigned>(cap);
  } else {
    module.cap =
        degree_limit + static_cast<unsigned>(2 * max_braid * std::max<std::size_t>(
                                                                 max_unipotent, 1));
  }
  if (module.cap > 250) throw TruncationOverflow("working degree cap exceeds 250");
  return module;
}

VPoly constant_function(const TwistedModule& module, const std::vector<std::uint64_t>& v) {
  (void)module;
  VPoly out;
  if (!is_zero(v)) out.terms.emplace(0, v);
  return out;
}

VPoly basis_function(const TwistedModule& module, std::size_t v_index, MonoKey mono) {
  VPoly out;
  std::vector<std::uint64_t> v(module.dim_v, 0);
  v[v_index] = 1;
  out.terms.emplace(mono, v);
  return out;
}

VPoly scalar_multiply(const TwistedModule& module, const SPoly& g, const VPoly& f) {
  GF field(module.p);
  VPoly out;
  for (const auto& [mg, cg] : g)
    for (const auto& [mf, vf] : f.terms) {
      MonoKey m = mg + mf;
      if (mono_degree(m) > module.cap)
        throw TruncationOverflow("product degree " + std::to_string(mono_degree(m)) +
                                 " exceeds cap " + std::to_string(module.cap));
      std::vector<std::uint64_t> v(vf.size());
      for (std::size_t i = 0; i < vf.size(); ++i) v[i] = field.mul(cg, vf[i]);
      add_term(out, m, v, field);
    }
  return out;
}

SPoly scalar_reflect(const TwistedModule& module, std::size_t simple, const SPoly& g) {
  GF f(module.p);
  const SimpleRootOps& ops = module.simples[simple];
  // powers of the substituted variables
  std::vector<std::vector<SPoly>> powers(module.rank);
  for (std::size_t i = 0; i < module.rank; ++i) {
    std::vector<std::uint64_t> row(module.rank);
    for (std::size_t j = 0; j < module.rank; ++j) row[j] = ops.reflection(i, j);
    powers[i].push_back(SPoly{{0, 1}});
    powers[i].push_back(linear_form(row, module.rank));
  }
  SPoly out;
  for (const auto& [m, c] : g) {
    std::vector<unsigned> exps = mono_unpack(m, module.rank);
    SPoly acc{{0, c}};
    for (std::size_t i = 0; i < module.rank; ++i) {
      while (powers[i].size() <= exps[i])
        powers[i].push_back(spoly_mul(powers[i].back(), powers[i][1], f));
      if (exps[i]) acc = spoly_mul(acc, powers[i][exps[i]], f);
    }
    for (const auto& [ma, ca] : acc) {
      auto [it, fresh] = out.emplace(ma, ca);
      if (!fresh) {
        it->second = f.add(it->second, ca);
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

VPoly twisted_action(const TwistedModule& module, std::size_t simple, const VPoly& fn) {
  GF f(module.p);
  const SimpleRootOps& ops = module.simples[simple];
  const std::size_t r = module.rank;

  // substitution h -> s_alpha h
  std::vector<std::vector<SPoly>> powers(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::uint64_t> row(r);
    for (std::size_t j = 0; j < r; ++j) row[j] = ops.reflection(i, j);
    powers[i].push_back(SPoly{{0, 1}});
    powers[i].push_back(linear_form(row, r));
  }
  VPoly substituted;
  for (const auto& [m, v] : fn.terms) {
    std::vector<unsigned> exps = mono_unpack(m, r);
    SPoly acc{{0, 1}};
    for (std::size_t i = 0; i < r; ++i) {
      while (powers[i].size() <= exps[i])
        powers[i].push_back(spoly_mul(powers[i].back(), powers[i][1], f));
      if (exps[i]) acc = spoly_mul(acc, powers[i][exps[i]], f);
    }
    for (const auto& [ma, ca] : acc) {
      if (mono_degree(ma) > module.cap)
        throw TruncationOverflow("substitution exceeded the degree cap");
      std::vector<std::uint64_t> scaled(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = f.mul(ca, v[i]);
      add_term(substituted, ma, scaled, f);
    }
  }

  // multiply by u_{-alpha}(-(d alpha)(h)) = sum_k q^k N_k, q = -d(alpha)
  std::vector<std::uint64_t> neg_dalpha(r);
  for (std::size_t j = 0; j < r; ++j) neg_dalpha[j] = f.neg(ops.dalpha[j]);
  SPoly q = linear_form(neg_dalpha, r);
  std::vector<SPoly> qpow{SPoly{{0, 1}}};
  for (std::size_t k = 1; k < ops.divided_powers.size(); ++k)
    qpow.push_back(spoly_mul(qpow.back(), q, f));

  VPoly out;
  for (const auto& [m, v] : substituted.terms) {
    for (std::size_t k = 0; k < ops.divided_powers.size(); ++k) {
      std::vector<std::uint64_t> nv = mat_vec_fp(ops.divided_powers[k], v, f);
      if (is_zero(nv)) continue;
      for (const auto& [mq, cq] : qpow[k]) {
        MonoKey mm = m + mq;
        if (mono_degree(mm) > module.cap)
          throw TruncationOverflow("unipotent factor exceeded the degree cap at degree " +
                                   std::to_string(mono_degree(mm)));
        std::vector<std::uint64_t> scaled(nv.size());
        for (std::size_t i = 0; i < nv.size(); ++i) scaled[i] = f.mul(cq, nv[i]);
        add_term(out, mm, scaled, f);
      }
    }
  }
  return out;
}

namespace {

std::size_t braid_order(const RootDatum& rd, std::size_t i, std::size_t j) {
  Int pr = pair_char_cochar(rd.roots[rd.simple_roots[i]].char_coords,
                            rd.roots[rd.simple_roots[j]].coroot_coords) *
           pair_char_cochar(rd.roots[rd.simple_roots[j]].char_coords,
                            rd.roots[rd.simple_roots[i]].coroot_coords);
  if (pr == 0) return 2;
  if (pr == 1) return 3;
  if (pr == 2) return 4;
  if (pr == 3) return 6;
  throw StructureConstantError("unexpected Cartan product");
}

std::vector<MonoKey> monomials_up_to(std::size_t rank, unsigned d) {
  std::vector<MonoKey> out;
  std::vector<unsigned> exps(rank, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == rank) {
      out.push_back(mono_pack(exps));
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      exps[i] = e;
      rec(i + 1, left - e);
    }
    exps[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

// enumerate W as shortest words in the simple reflections
std::vector<std::vector<std::size_t>> weyl_words(const RootDatum& rd, std::uint64_t cap) {
  Int order = known_weyl_order(rd);
  if (order > Int(cap)) throw WeylTooLarge("Weyl group exceeds cap");
  std::vector<IntMatrix> gens;
  for (std::size_t s : rd.simple_roots) gens.push_back(simple_reflection_cochar(rd, s));
  std::set<std::vector<Int>> seen;
  std::vector<std::pair<IntMatrix, std::vector<std::size_t>>> frontier;
  std::vector<std::vector<std::size_t>> words;
  frontier.emplace_back(IntMatrix::identity(rd.rank), std::vector<std::size_t>{});
  seen.insert(frontier[0].first.data());
  while (!frontier.empty()) {
    std::vector<std::pair<IntMatrix, std::vector<std::size_t>>> next;
    for (auto& [w, word] : frontier) {
      words.push_back(word);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        IntMatrix wg = mat_mul(gens[g], w);
        if (seen.insert(wg.data()).second) {
          std::vector<std::size_t> nw{g};
          nw.insert(nw.end(), word.begin(), word.end());
          next.emplace_back(std::move(wg), std::move(nw));
        }
      }
    }
    frontier = std::move(next);
  }
  return words;
}

VPoly apply_word(const TwistedModule& module, const std::vector<std::size_t>& word,
                 const VPoly& f) {
  VPoly cur = f;
  for (std::size_t i = word.size(); i-- > 0;) cur = twisted_action(module, word[i], cur);
  return cur;
}

} // namespace

WactionAudit waction_audit(const ChevalleyAlgebra& alg, const GrForm& gf, std::uint64_t p,
                           unsigned degree_limit, std::uint64_t seed,
                           std::size_t braid_samples, std::size_t rank_cap) {
  const RootDatum& rd = alg.datum;
  if (degree_limit > 10)
    throw ConfigError("the twisted-action audit envelope is degree <= 10");
  WactionAudit audit;
  if (!rd.is_single_sc()) {
    audit.applicable = false;
    audit.not_applicable_reason = "needs a single simply connected factor";
    return audit;
  }
  if (rd.rank > rank_cap) {
    audit.applicable = false;
    audit.not_applicable_reason = "rank " + std::to_string(rd.rank) +
                                  " exceeds the braid-word envelope (cap " +
                                  std::to_string(rank_cap) + ")";
    return audit;
  }
  if (p == 0 || !is_very_good_prime(rd, p)) {
    audit.applicable = false;
    audit.not_applicable_reason = "needs a very good prime, got p=" + std::to_string(p);
    return audit;
  }
  audit.applicable = true;

  TwistedModule module = make_twisted_module(alg, p, degree_limit);
  GF f(p);
  const std::size_t nsimple = module.simples.size();

  // (a) involution on the full truncated basis
  std::vector<MonoKey> monos = monomials_up_to(module.rank, degree_limit);
  audit.involution_pass = true;
  for (std::size_t s = 0; s < nsimple; ++s)
    for (std::size_t v = 0; v < module.dim_v; ++v)
      for (MonoKey m : monos) {
        VPoly fn = basis_function(module, v, m);
        if (!(twisted_action(module, s, twisted_action(module, s, fn)) == fn)) {
          audit.involution_pass = false;
        }
        ++audit.involution_checked;
      }

  // (b) braid relations: exact on the reflection matrices over Z, on all
  // constant functions, and on seeded monomial samples; constants plus
  // the scalar identity determine the action on the whole module
  audit.scalar_braid_pass = true;
  audit.braid_pass = true;
  for (std::size_t i = 0; i < nsimple; ++i)
    for (std::size_t j = i + 1; j < nsimple; ++j) {
      std::size_t m = braid_order(rd, i, j);
      IntMatrix wi = simple_reflection_cochar(rd, rd.simple_roots[i]);
      IntMatrix wj = simple_reflection_cochar(rd, rd.simple_roots[j]);
      IntMatrix prod = IntMatrix::identity(rd.rank);
      for (std::size_t k = 0; k < m; ++k) prod = mat_mul(prod, mat_mul(wi, wj));
      if (!(prod == IntMatrix::identity(rd.rank))) audit.scalar_braid_pass = false;

      std::vector<std::size_t> word;
      for (std::size_t k = 0; k < m; ++k) {
        word.push_back(i);
        word.push_back(j);
      }
      auto check = [&](const VPoly& fn) {
        if (!(apply_word(module, word, fn) == fn)) audit.braid_pass = false;
        ++audit.braid_checked;
      };
      for (std::size_t v = 0; v < module.dim_v; ++v)
        check(basis_function(module, v, 0));
      SplitMix64 rng(mix_seed(seed, 101 + i * nsimple + j));
      for (std::size_t t = 0; t < braid_samples; ++t) {
        std::size_t v = rng.below(module.dim_v);
        MonoKey m2 = monos[rng.below(monos.size())];
        check(basis_function(module, v, m2));
      }
    }

  // (c) pulling the geometric formula back along tau: for every simple
  // alpha, |alpha|^2 <xi, h_alpha> = (d alpha)(tau(xi)) as linear forms,
  // and tau intertwines the two reflections
  TauRootAudit tau = tau_root_audit(rd, gf, p);
  audit.formula_equivalence_pass =
      tau.differential_identity && tau.w_equivariant && tau.invertible_mod_p;

  // (d) the action commutes with multiplication by W-invariant scalars
  audit.invariant_linearity_pass = true;
  {
    std::vector<std::vector<std::size_t>> words = weyl_words(rd, kDefaultWeylCap);
    SplitMix64 rng(mix_seed(seed, 777));
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<unsigned> exps(module.rank, 0);
      for (unsigned d = 0; d < 3; ++d) ++exps[rng.below(module.rank)];
      SPoly mono{{mono_pack(exps), 1}};
      // orbit sum over W of the monomial (ordinary action on scalars)
      SPoly inv;
      for (const auto& word : words) {
        SPoly g = mono;
        for (std::size_t k = word.size(); k-- > 0;) g = scalar_reflect(module, word[k], g);
        for (const auto& [mk, ck] : g) {
          auto [it, fresh] = inv.emplace(mk, ck);
          if (!fresh) {
            it->second = f.add(it->second, ck);
            if (it->second == 0) inv.erase(it);
          }
        }
      }
      for (std::size_t s = 0; s < nsimple; ++s)
        if (!(scalar_reflect(module, s, inv) == inv)) audit.invariant_linearity_pass = false;

      VPoly fn = basis_function(module, rng.below(module.dim_v),
                                monos[rng.below(monos.size())]);
      for (std::size_t s = 0; s < nsimple; ++s) {
        VPoly lhs = twisted_action(module, s, scalar_multiply(module, inv, fn));
        VPoly rhs = scalar_multiply(module, inv, twisted_action(module, s, fn));
        if (!(lhs == rhs)) audit.invariant_linearity_pass = false;
      }
    }
  }
  return audit;
}

std::size_t invariant_dim_solve(const TwistedModule& module, unsigned d) {
  GF f(module.p);
  std::vector<MonoKey> monos = monomials_up_to(module.rank, d);
  unsigned out_deg = d;
  for (const SimpleRootOps& ops : module.simples)
    out_deg = std::max<unsigned>(out_deg,
                                 d + static_cast<unsigned>(ops.unipotent_degree()));
  std::vector<MonoKey> out_monos = monomials_up_to(module.rank, out_deg);
  std::map<MonoKey, std::size_t> out_pos;
  for (std::size_t i = 0; i < out_monos.size(); ++i) out_pos[out_monos[i]] = i;

  const std::size_t unknowns = monos.size() * module.dim_v;
  const std::size_t rows_per = out_monos.size() * module.dim_v;
  FpMatrix system(rows_per * module.simples.size(), unknowns);
  for (std::size_t col = 0; col < unknowns; ++col) {
    std::size_t mi = col / module.dim_v;
    std::size_t vi = col % module.dim_v;
    VPoly fn = basis_function(module, vi, monos[mi]);
    for (std::size_t s = 0; s < module.simples.size(); ++s) {
      VPoly g = twisted_action(module, s, fn);
      // g - fn
      GF field(module.p);
      for (const auto& [m, v] : fn.terms) {
        std::vector<std::uint64_t> neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = field.neg(v[i]);
        add_term(g, m, neg, field);
      }
      for (const auto& [m, v] : g.terms) {
        std::size_t base = s * rows_per + out_pos.at(m) * module.dim_v;
        for (std::size_t i = 0; i < module.dim_v; ++i) system(base + i, col) = v[i];
      }
    }
  }
  return unknowns - rank_fp(system, f);
}

std::size_t invariant_dim_average(const TwistedModule& module, unsigned d) {
  GF f(module.p);
  const RootDatum& rd = module.alg->datum;
  std::vector<std::vector<std::size_t>> words = weyl_words(rd, kDefaultWeylCap);
  if (words.size() % module.p == 0)
    throw ConditionViolation("averaging needs |W| invertible mod p");
  std::uint64_t inv_order = f.inv(words.size() % module.p);

  std::vector<MonoKey> monos = monomials_up_to(module.rank, d);
  std::vector<MonoKey> out_monos = monomials_up_to(module.rank, module.cap);
  std::map<MonoKey, std::size_t> out_pos;
  for (std::size_t i = 0; i < out_monos.size(); ++i) out_pos[out_monos[i]] = i;
  const std::size_t big = out_monos.size() * module.dim_v;
  const std::size_t small = monos.size() * module.dim_v;

  // images of the averaging projector on the degree <= d basis
  FpMatrix images(big, small);
  for (std::size_t col = 0; col < small; ++col) {
    VPoly fn = basis_function(module, col % module.dim_v, monos[col / module.dim_v]);
    VPoly acc;
    for (const auto& word : words) {
      VPoly w = apply_word(module, word, fn);
      for (const auto& [m, v] : w.terms) add_term(acc, m, v, f);
    }
    for (const auto& [m, v] : acc.terms) {
      std::size_t base = out_pos.at(m) * module.dim_v;
      for (std::size_t i = 0; i < module.dim_v; ++i)
        images(base + i, col) = f.mul(v[i], inv_order);
    }
  }

  // dim( im(P|_{<=d}) meet V_{<=d} ) = rank(U) + dim(V_{<=d}) - rank([U | inclusion])
  std::size_t rank_u = rank_fp(images, f);
  FpMatrix joined(big, small + small);
  for (std::size_t i = 0; i < big; ++i)
    for (std::size_t j = 0; j < small; ++j) joined(i, j) = images(i, j);
  for (std::size_t col = 0; col < small; ++col) {
    std::size_t mi = col / module.dim_v, vi = col % module.dim_v;
    joined(out_pos.at(monos[mi]) * module.dim_v + vi, small + col) = 1;
  }
  std::size_t rank_joined = rank_fp(joined, f);
  return rank_u + small - rank_joined;
}

} // namespace kkit
