#include "kkit/chevalley.hpp"

#include "kkit/errors.hpp"
#include "kkit/smith.hpp"

#include <algorithm>
#include <map>

namespace kkit {

namespace {

Rat exact_div(const Rat& a, const Rat& b) {
  if (b == 0) throw StructureConstantError("division by zero structure constant");
  return a / b;
}

Int rat_to_int(const Rat& r, const char* what) {
  if (boost::multiprecision::denominator(r) != 1)
    throw StructureConstantError(std::string("non-integral ") + what + ": " + r.str());
  return boost::multiprecision::numerator(r);
}

// Structure constants on the positive roots of one quasi-simple factor,
// signs fixed by the extraspecial-pair convention.
struct FactorConstants {
  const RootDatum* rd;
  const FactorData* fd;
  std::size_t npos;
  std::map<std::vector<Int>, std::size_t> coord_to_local; // all roots of factor
  std::vector<std::vector<Int>> ntable;                   // npos x npos, 0 = unset

  std::size_t global(std::size_t local) const { return fd->roots[local]; }
  const Root& root(std::size_t local) const { return rd->roots[global(local)]; }
  bool is_root(const std::vector<Int>& coords) const {
    return coord_to_local.count(coords) != 0;
  }
  std::size_t local_of(const std::vector<Int>& coords) const {
    return coord_to_local.at(coords);
  }

  // p_{a,b} = max { k >= 0 : b - k a in Phi }
  int p_value(std::size_t a, std::size_t b) const {
    std::vector<Int> cur = root(b).simple_coords;
    const std::vector<Int>& step = root(a).simple_coords;
    int k = 0;
    for (;;) {
      for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= step[i];
      if (!is_root(cur)) return k;
      ++k;
      if (k > 8) throw StructureConstantError("runaway root string");
    }
  }
};

std::vector<Int> add_coords(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
std::vector<Int> sub_coords(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

FactorConstants build_factor_constants(const RootDatum& rd, const FactorData& fd) {
  FactorConstants fc;
  fc.rd = &rd;
  fc.fd = &fd;
  fc.npos = fd.roots.size() / 2;
  for (std::size_t l = 0; l < fd.roots.size(); ++l)
    fc.coord_to_local[rd.roots[fd.roots[l]].simple_coords] = l;
  fc.ntable.assign(fc.npos, std::vector<Int>(fc.npos, 0));

  // Process target roots by increasing height (positive locals are
  // height-sorted); every constant used on the right-hand side involves
  // a target of strictly smaller height, so the table is always ready.
  for (std::size_t g = 0; g < fc.npos; ++g) {
    const Root& gamma = fc.root(g);
    if (gamma.height < 2) continue;

    std::vector<std::pair<std::size_t, std::size_t>> specials;
    for (std::size_t a = 0; a < fc.npos; ++a) {
      const Root& ra = fc.root(a);
      if (ra.height >= gamma.height) break;
      std::vector<Int> rest = sub_coords(gamma.simple_coords, ra.simple_coords);
      if (!fc.is_root(rest)) continue;
      std::size_t b = fc.local_of(rest);
      if (b >= fc.npos || b <= a) continue;
      specials.emplace_back(a, b);
    }
    if (specials.empty())
      throw StructureConstantError("no special pair for a composite root");

    auto [eps, del] = specials.front(); // extraspecial: minimal first member
    {
      Int n = fc.p_value(eps, del) + 1;
      fc.ntable[eps][del] = n;
      fc.ntable[del][eps] = -n;
    }

    for (std::size_t s = 1; s < specials.size(); ++s) {
      auto [a, b] = specials[s];
      const Root& ra = fc.root(a);
      const Root& rb = fc.root(b);
      const Root& re = fc.root(eps);
      const Root& rdl = fc.root(del);

      Rat lhs = Rat(rdl.length_sq) / gamma.length_sq * Rat(fc.ntable[eps][del]);
      Rat rhs = 0;

      std::vector<Int> eta = sub_coords(rb.simple_coords, re.simple_coords);
      if (fc.is_root(eta)) {
        std::size_t h = fc.local_of(eta);
        if (h >= fc.npos) throw StructureConstantError("eta not positive");
        rhs += Rat(fc.root(h).length_sq) / rb.length_sq *
               Rat(fc.ntable[eps][h] * fc.ntable[a][h]);
      }
      std::vector<Int> zeta = sub_coords(ra.simple_coords, re.simple_coords);
      if (fc.is_root(zeta)) {
        std::size_t z = fc.local_of(zeta);
        if (z >= fc.npos) throw StructureConstantError("zeta not positive");
        rhs -= Rat(fc.root(z).length_sq) / ra.length_sq *
               Rat(fc.ntable[eps][z] * fc.ntable[b][z]);
      }

      Int n = rat_to_int(exact_div(rhs, lhs), "structure constant");
      if (abs_int(n) != Int(fc.p_value(a, b) + 1))
        throw StructureConstantError("structure constant magnitude mismatch");
      fc.ntable[a][b] = n;
      fc.ntable[b][a] = -n;
    }
  }
  return fc;
}

// [e_x, e_y] coefficient for two roots of the same factor whose sum is a
// root, reduced to the positive-pair table through the cyclic identity.
Int mixed_coefficient(const FactorConstants& fc, std::size_t lx, std::size_t ly) {
  const std::size_t npos = fc.npos;
  const bool px = lx < npos, py = ly < npos;
  if (px && py) return fc.ntable[lx][ly];
  if (!px && !py) return -mixed_coefficient(fc, lx - npos, ly - npos);
  if (!px && py) return -mixed_coefficient(fc, ly, lx);

  // [e_alpha, e_{-beta}], alpha - beta a nonzero root
  const std::size_t pa = lx, pb = ly - npos;
  const Root& ra = fc.root(pa);
  const Root& rb = fc.root(pb);
  std::vector<Int> diff = sub_coords(ra.simple_coords, rb.simple_coords);
  std::size_t ld = fc.local_of(diff);
  Rat val;
  if (ld < npos) { // xi = alpha - beta positive, beta + xi = alpha
    val = Rat(fc.root(ld).length_sq) / ra.length_sq * Rat(-fc.ntable[pb][ld]);
  } else { // xi' = beta - alpha positive, xi' + alpha = beta
    std::size_t lxp = ld - npos;
    val = Rat(fc.root(lxp).length_sq) / rb.length_sq * Rat(fc.ntable[lxp][pa]);
  }
  return rat_to_int(val, "mixed structure constant");
}

void validate_algebra(const ChevalleyAlgebra& alg) {
  const std::size_t d = alg.dim;
  const RootDatum& rd = alg.datum;

  // antisymmetry and grading on all basis pairs
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const SparseVec& ij = alg.table[i][j];
      const SparseVec& ji = alg.table[j][i];
      if (ij.size() != ji.size())
        throw StructureConstantError("antisymmetry violated");
      for (std::size_t k = 0; k < ij.size(); ++k)
        if (ij[k].first != ji[k].first || ij[k].second != -ji[k].second)
          throw StructureConstantError("antisymmetry violated");
      const long want = alg.degree[i] + alg.degree[j];
      for (const auto& [idx, c] : ij)
        if (c != 0 && alg.degree[idx] != want)
          throw StructureConstantError("bracket violates the height grading");
    }

  // [h, e_alpha] = <alpha, h> e_alpha and [e_alpha, e_{-alpha}] = coroot
  for (std::size_t r = 0; r < rd.num_roots(); ++r) {
    for (std::size_t k = 0; k < rd.rank; ++k) {
      const SparseVec& v = alg.table[alg.cartan_offset + k][r];
      Int want = rd.roots[r].char_coords[k];
      if (want == 0) {
        if (!v.empty()) throw StructureConstantError("weight bracket mismatch");
      } else if (v.size() != 1 || v[0].first != r || v[0].second != want) {
        throw StructureConstantError("weight bracket mismatch");
      }
    }
    const SparseVec& cor = alg.table[r][rd.negative_of[r]];
    IntVec got(rd.rank, 0);
    for (const auto& [idx, c] : cor) {
      if (idx < alg.cartan_offset)
        throw StructureConstantError("[e,f] must land in the Cartan");
      got[idx - alg.cartan_offset] = c;
    }
    for (std::size_t k = 0; k < rd.rank; ++k)
      if (got[k] != rd.roots[r].coroot_coords[k])
        throw StructureConstantError("[e_a, e_{-a}] is not the coroot");
  }

  // Jacobi scan: full for rank <= 4, seeded 10^4 triples above
  auto jacobi = [&](std::size_t i, std::size_t j, std::size_t k) {
    IntVec acc(d, 0);
    auto add_term = [&](std::size_t x, const SparseVec& yz, int sign) {
      for (const auto& [l, c] : yz)
        for (const auto& [m, c2] : alg.table[x][l]) acc[m] += sign * c * c2;
    };
    add_term(i, alg.table[j][k], 1);
    add_term(j, alg.table[k][i], 1);
    add_term(k, alg.table[i][j], 1);
    for (const Int& v : acc)
      if (v != 0) throw StructureConstantError("Jacobi identity failed");
  };
  if (rd.rank <= 4) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) jacobi(i, j, k);
  } else {
    SplitMix64 rng(0xC0FFEE0Dull);
    for (int t = 0; t < 10000; ++t)
      jacobi(rng.below(d), rng.below(d), rng.below(d));
  }
}

} // namespace

ChevalleyAlgebra build_chevalley_algebra(const RootDatum& rd) {
  ChevalleyAlgebra alg;
  alg.datum = rd;
  alg.cartan_offset = rd.num_roots();
  alg.dim = rd.num_roots() + rd.rank;

  std::vector<FactorConstants> constants(rd.factors.size());
  for (std::size_t f = 0; f < rd.factors.size(); ++f)
    if (!rd.factors[f].spec.is_gl)
      constants[f] = build_factor_constants(rd, rd.factors[f]);

  // local index of a root inside its factor
  std::vector<std::size_t> local_index(rd.num_roots());
  for (const FactorData& fd : rd.factors)
    for (std::size_t l = 0; l < fd.roots.size(); ++l) local_index[fd.roots[l]] = l;

  // GL factors bracket as elementary matrices: [E_ij, E_kl] = d_jk E_il - d_li E_kj.
  // A root eps_i - eps_j of a GL factor recovers (i, j) from its coordinates.
  auto gl_indices = [&](const Root& r, const FactorData& fd) {
    int i = -1, j = -1;
    for (std::size_t k = 0; k < fd.lattice_rank; ++k) {
      const Int& c = r.char_coords[fd.lattice_offset + k];
      if (c == 1) i = static_cast<int>(k);
      if (c == -1) j = static_cast<int>(k);
    }
    return std::make_pair(i, j);
  };

  alg.table.assign(alg.dim, std::vector<SparseVec>(alg.dim));
  auto coroot_sparse = [&](std::size_t r, int sign) {
    SparseVec v;
    for (std::size_t k = 0; k < rd.rank; ++k) {
      const Int& c = rd.roots[r].coroot_coords[k];
      if (c != 0) v.emplace_back(alg.cartan_offset + k, sign * c);
    }
    return v;
  };

  std::map<std::pair<int, std::vector<Int>>, std::size_t> root_lookup;
  for (std::size_t r = 0; r < rd.num_roots(); ++r)
    root_lookup[{rd.roots[r].factor, rd.roots[r].simple_coords}] = r;

  for (std::size_t i = 0; i < rd.num_roots(); ++i) {
    const Root& ri = rd.roots[i];
    for (std::size_t j = 0; j < rd.num_roots(); ++j) {
      if (i == j) continue;
      const Root& rj = rd.roots[j];
      if (ri.factor != rj.factor) continue;
      const FactorData& fd = rd.factors[ri.factor];
      if (j == rd.negative_of[i]) {
        int sign = ri.height > 0 ? 1 : -1;
        std::size_t pos = ri.height > 0 ? i : j;
        alg.table[i][j] = coroot_sparse(pos, sign);
        continue;
      }
      std::vector<Int> sum = add_coords(ri.simple_coords, rj.simple_coords);
      auto it = root_lookup.find({ri.factor, sum});
      if (it == root_lookup.end()) continue;
      Int coeff;
      if (fd.spec.is_gl) {
        auto [a, b] = gl_indices(ri, fd);
        auto [c, e] = gl_indices(rj, fd);
        // [E_ab, E_ce] with (a,e) or (c,b) the surviving unit
        coeff = 0;
        if (b == c) coeff += 1;
        if (e == a) coeff -= 1;
        if (coeff == 0) continue;
      } else {
        coeff = mixed_coefficient(constants[ri.factor], local_index[i], local_index[j]);
      }
      alg.table[i][j] = SparseVec{{it->second, coeff}};
    }
  }
  for (std::size_t k = 0; k < rd.rank; ++k)
    for (std::size_t r = 0; r < rd.num_roots(); ++r) {
      const Int& w = rd.roots[r].char_coords[k];
      if (w == 0) continue;
      alg.table[alg.cartan_offset + k][r] = SparseVec{{r, w}};
      alg.table[r][alg.cartan_offset + k] = SparseVec{{r, -w}};
    }

  alg.degree.assign(alg.dim, 0);
  for (std::size_t r = 0; r < rd.num_roots(); ++r) alg.degree[r] = rd.roots[r].height;
  for (std::size_t i = 0; i < alg.dim; ++i) alg.graded[alg.degree[i]].push_back(i);

  validate_algebra(alg);
  return alg;
}

IntVec bracket(const ChevalleyAlgebra& alg, const IntVec& x, const IntVec& y) {
  IntVec out(alg.dim, 0);
  for (std::size_t i = 0; i < alg.dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < alg.dim; ++j) {
      if (y[j] == 0) continue;
      for (const auto& [k, c] : alg.table[i][j]) out[k] += x[i] * y[j] * c;
    }
  }
  return out;
}

IntMatrix ad_basis_matrix(const ChevalleyAlgebra& alg, std::size_t basis_index) {
  IntMatrix m(alg.dim, alg.dim);
  for (std::size_t j = 0; j < alg.dim; ++j)
    for (const auto& [k, c] : alg.table[basis_index][j]) m(k, j) = c;
  return m;
}

IntMatrix ad_matrix(const ChevalleyAlgebra& alg, const IntVec& x) {
  IntMatrix m(alg.dim, alg.dim);
  for (std::size_t i = 0; i < alg.dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < alg.dim; ++j)
      for (const auto& [k, c] : alg.table[i][j]) m(k, j) += x[i] * c;
  }
  return m;
}

PrincipalNilpotent principal_nilpotent(const ChevalleyAlgebra& alg) {
  PrincipalNilpotent pn;
  pn.e.assign(alg.dim, 0);
  for (std::size_t s : alg.datum.simple_roots) {
    pn.simple_indices.push_back(s);
    pn.paired_negatives.push_back(alg.datum.negative_of[s]);
    pn.e[s] = 1;
  }
  return pn;
}

IntMatrix springer_map(const ChevalleyAlgebra& alg, long i) {
  auto from = alg.graded.find(i);
  if (from == alg.graded.end())
    throw EmptyDegree("graded piece " + std::to_string(i) + " is zero");
  auto to = alg.graded.find(i + 1);
  const std::vector<std::size_t> empty;
  const std::vector<std::size_t>& target = to == alg.graded.end() ? empty : to->second;

  PrincipalNilpotent pn = principal_nilpotent(alg);
  IntMatrix m(target.size(), from->second.size());
  for (std::size_t col = 0; col < from->second.size(); ++col) {
    IntVec y(alg.dim, 0);
    y[from->second[col]] = 1;
    IntVec img = bracket(alg, pn.e, y);
    for (std::size_t row = 0; row < target.size(); ++row) m(row, col) = img[target[row]];
    for (std::size_t k = 0; k < alg.dim; ++k) {
      if (img[k] == 0) continue;
      if (alg.degree[k] != i + 1)
        throw StructureConstantError("ad(e) escaped the grading");
    }
  }
  return m;
}

SpringerTorsionReport springer_torsion_report(const ChevalleyAlgebra& alg) {
  SpringerTorsionReport rep;
  std::vector<std::uint64_t> bad = bad_primes(alg.datum);
  rep.torsion_within_bad = true;

  std::vector<std::uint64_t> low_primes; // degrees <= 0
  std::vector<std::uint64_t> all_primes;
  for (const auto& [deg, basis] : alg.graded) {
    IntMatrix t = springer_map(alg, deg);
    SpringerDegreeReport dr;
    dr.degree = deg;
    dr.dim_from = basis.size();
    dr.dim_to = t.rows();
    dr.injective_over_q = rank_int(t) == t.cols();
    dr.torsion_primes = torsion_primes(t);
    for (std::uint64_t p : dr.torsion_primes) {
      if (deg == -1) {
        rep.degree_minus1_torsion.push_back(p);
      } else if (deg == 0) {
        rep.degree_zero_torsion.push_back(p);
      } else {
        if (std::find(rep.regular_torsion_primes.begin(), rep.regular_torsion_primes.end(),
                      p) == rep.regular_torsion_primes.end())
          rep.regular_torsion_primes.push_back(p);
        if (std::find(bad.begin(), bad.end(), p) == bad.end())
          rep.torsion_within_bad = false;
      }
      if (deg <= 0 &&
          std::find(low_primes.begin(), low_primes.end(), p) == low_primes.end())
        low_primes.push_back(p);
      if (std::find(all_primes.begin(), all_primes.end(), p) == all_primes.end())
        all_primes.push_back(p);
    }
    rep.degrees.push_back(std::move(dr));
  }
  std::sort(rep.regular_torsion_primes.begin(), rep.regular_torsion_primes.end());
  std::sort(low_primes.begin(), low_primes.end());
  std::sort(all_primes.begin(), all_primes.end());
  rep.derived_n = 1;
  for (std::uint64_t p : all_primes) rep.derived_n *= Int(p);
  rep.slice_n = 1;
  for (std::uint64_t p : low_primes) rep.slice_n *= Int(p);
  return rep;
}

std::vector<IntMatrix> divided_power_table(const ChevalleyAlgebra& alg,
                                           std::size_t basis_index) {
  if (basis_index >= alg.cartan_offset)
    throw NonIntegralDividedPower("ad(y) must be nilpotent; Cartan vectors are not");
  IntMatrix a = ad_basis_matrix(alg, basis_index);
  std::vector<IntMatrix> table{IntMatrix::identity(alg.dim)};
  for (std::size_t k = 1; k <= alg.dim + 1; ++k) {
    IntMatrix next = mat_mul(table.back(), a);
    bool zero = true;
    for (std::size_t i = 0; i < alg.dim && zero; ++i)
      for (std::size_t j = 0; j < alg.dim; ++j)
        if (next(i, j) != 0) {
          zero = false;
          break;
        }
    if (zero) return table;
    for (std::size_t i = 0; i < alg.dim; ++i)
      for (std::size_t j = 0; j < alg.dim; ++j) {
        if (next(i, j) % Int(k) != 0)
          throw NonIntegralDividedPower("(ad y)^k / k! is not integral at k=" +
                                        std::to_string(k));
        next(i, j) /= Int(k);
      }
    table.push_back(std::move(next));
  }
  throw NonIntegralDividedPower("ad(y) is not nilpotent");
}

FpMatrix divided_power_exp_fp(const ChevalleyAlgebra& alg, std::size_t basis_index,
                              std::uint64_t c, const GF& f) {
  std::vector<IntMatrix> tbl = divided_power_table(alg, basis_index);
  FpMatrix out(alg.dim, alg.dim);
  std::uint64_t ck = 1;
  for (std::size_t k = 0; k < tbl.size(); ++k) {
    for (std::size_t i = 0; i < alg.dim; ++i)
      for (std::size_t j = 0; j < alg.dim; ++j)
        out(i, j) = f.add(out(i, j), f.mul(ck, f.from_int(tbl[k](i, j))));
    ck = f.mul(ck, c % f.p);
  }
  return out;
}

RatMatrix divided_power_exp_rat(const ChevalleyAlgebra& alg, std::size_t basis_index,
                                const Rat& c) {
  std::vector<IntMatrix> tbl = divided_power_table(alg, basis_index);
  RatMatrix out(alg.dim, alg.dim);
  Rat ck = 1;
  for (std::size_t k = 0; k < tbl.size(); ++k) {
    for (std::size_t i = 0; i < alg.dim; ++i)
      for (std::size_t j = 0; j < alg.dim; ++j) out(i, j) += ck * Rat(tbl[k](i, j));
    ck *= c;
  }
  return out;
}

FieldOperator divided_power_exp(const ChevalleyAlgebra& alg, std::size_t basis_index,
                                const FieldScalar& c) {
  FieldOperator op;
  op.characteristic = c.characteristic;
  if (c.characteristic == 0)
    op.rat = divided_power_exp_rat(alg, basis_index, c.rational);
  else
    op.fp = divided_power_exp_fp(alg, basis_index, c.residue, GF(c.characteristic));
  return op;
}

} // namespace kkit
