#include "kkit/root_datum.hpp"

#include "kkit/errors.hpp"
#include "kkit/smith.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kkit {

Int pair_char_cochar(const std::vector<Int>& lambda, const std::vector<Int>& v) {
  Int s = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * v[i];
  return s;
}

namespace {

// Dynkin diagram data: edge list and squared lengths (short = 1).
struct Diagram {
  std::vector<std::pair<int, int>> edges;
  std::vector<int> d; // d[i] = |alpha_i|^2
};

Diagram diagram_for(CartanType t, int n) {
  Diagram g;
  g.d.assign(n, 1);
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) g.edges.emplace_back(i, i + 1);
  };
  switch (t) {
    case CartanType::A:
      chain(n);
      break;
    case CartanType::B:
      chain(n);
      for (int i = 0; i + 1 < n; ++i) g.d[i] = 2; // last node short
      break;
    case CartanType::C:
      chain(n);
      g.d[n - 1] = 2; // last node long
      break;
    case CartanType::D:
      for (int i = 0; i + 1 < n - 1; ++i) g.edges.emplace_back(i, i + 1);
      g.edges.emplace_back(n - 3, n - 1);
      break;
    case CartanType::E:
      // nodes 1,3,4,5,...,n in a chain, node 2 attached to node 4
      g.edges.emplace_back(0, 2);
      for (int i = 2; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
      g.edges.emplace_back(1, 3);
      break;
    case CartanType::F:
      chain(4);
      g.d[0] = g.d[1] = 2;
      break;
    case CartanType::G:
      chain(2);
      g.d[1] = 3;
      break;
  }
  return g;
}

IntMatrix cartan_from_diagram(const Diagram& g, int n) {
  // cartan(i,j) = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i), with
  // (alpha_i, alpha_j) = -max(d_i, d_j)/2 on edges and d_i on the diagonal.
  IntMatrix c(n, n);
  for (int i = 0; i < n; ++i) c(i, i) = 2;
  for (auto [i, j] : g.edges) {
    Rat vij = Rat(-std::max(g.d[i], g.d[j])) / 2;
    Rat aij = 2 * vij / g.d[i];
    Rat aji = 2 * vij / g.d[j];
    if (boost::multiprecision::denominator(aij) != 1 ||
        boost::multiprecision::denominator(aji) != 1)
      throw StructureConstantError("non-integral Cartan entry");
    c(i, j) = boost::multiprecision::numerator(aij);
    c(j, i) = boost::multiprecision::numerator(aji);
  }
  return c;
}

std::size_t expected_root_count(CartanType t, int n) {
  switch (t) {
    case CartanType::A: return static_cast<std::size_t>(n) * (n + 1);
    case CartanType::B:
    case CartanType::C: return 2u * n * n;
    case CartanType::D: return 2u * n * (n - 1);
    case CartanType::E:
      if (n == 6) return 72;
      if (n == 7) return 126;
      return 240;
    case CartanType::F: return 48;
    case CartanType::G: return 12;
  }
  return 0;
}

struct LocalRoot {
  std::vector<Int> simple_coords;
  long height;
  int length_sq;
};

// All roots of a quasi-simple system, in simple-root coordinates, by
// reflection closure from the simple roots.
std::vector<LocalRoot> generate_roots(const IntMatrix& cartan, const Diagram& g, int n) {
  std::set<std::vector<Int>> seen;
  std::vector<std::vector<Int>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<Int> c(n, 0);
    c[i] = 1;
    seen.insert(c);
    queue.push_back(c);
  }
  while (!queue.empty()) {
    std::vector<Int> c = queue.back();
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      Int pairing = 0; // <beta, coroot_i>
      for (int j = 0; j < n; ++j) pairing += cartan(i, j) * c[j];
      std::vector<Int> refl = c;
      refl[i] -= pairing;
      if (seen.insert(refl).second) queue.push_back(refl);
    }
  }
  std::vector<LocalRoot> out;
  for (const auto& c : seen) {
    LocalRoot r;
    r.simple_coords = c;
    r.height = 0;
    for (const Int& x : c) r.height += x.convert_to<long>();
    Rat len = 0; // (beta, beta) with (alpha_i, alpha_j) = d_i * cartan(i,j) / 2
    for (int i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j < n; ++j)
        len += Rat(c[i] * c[j] * g.d[i] * cartan(i, j)) / 2;
    }
    if (boost::multiprecision::denominator(len) != 1)
      throw StructureConstantError("non-integral root length");
    Int len_i = boost::multiprecision::numerator(len);
    if (len_i < 1 || len_i > 3)
      throw StructureConstantError("unexpected root length " + len_i.str());
    r.length_sq = len_i.convert_to<int>();
    out.push_back(std::move(r));
  }
  return out;
}

// Exponents as the dual partition of the height multiset: the counts
// r_k = #{roots of height k} form a weakly decreasing partition, and
// its conjugate lists the exponents.
std::vector<int> exponents_from_heights(const std::vector<long>& heights) {
  if (heights.empty()) return {};
  long maxh = *std::max_element(heights.begin(), heights.end());
  std::vector<int> r;
  for (long k = 1; k <= maxh; ++k)
    r.push_back(static_cast<int>(
        std::count(heights.begin(), heights.end(), k)));
  std::vector<int> exps;
  int width = r.empty() ? 0 : r[0];
  for (int i = 1; i <= width; ++i)
    exps.push_back(static_cast<int>(
        std::count_if(r.begin(), r.end(), [&](int x) { return x >= i; })));
  std::sort(exps.begin(), exps.end());
  return exps;
}

} // namespace

RootDatum build_root_datum(const GroupSpec& spec) {
  RootDatum rd;
  rd.spec = spec;

  std::size_t offset = 0;
  for (const GroupFactor& f : spec.factors) {
    FactorData fd;
    fd.spec = f;
    fd.lattice_offset = offset;
    fd.lattice_rank = static_cast<std::size_t>(f.rank);
    offset += fd.lattice_rank;
    rd.factors.push_back(std::move(fd));
  }
  rd.rank = offset;

  for (std::size_t fi = 0; fi < rd.factors.size(); ++fi) {
    FactorData& fd = rd.factors[fi];
    const int n = fd.spec.rank;
    const std::size_t off = fd.lattice_offset;

    std::vector<LocalRoot> locals;
    if (fd.spec.is_gl) {
      fd.cartan = n >= 2 ? cartan_from_diagram(diagram_for(CartanType::A, n - 1), n - 1)
                         : IntMatrix(0, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          LocalRoot r;
          r.simple_coords.assign(n - 1, 0); // in the simple roots eps_k - eps_{k+1}
          if (i < j)
            for (int k = i; k < j; ++k) r.simple_coords[k] = 1;
          else
            for (int k = j; k < i; ++k) r.simple_coords[k] = -1;
          r.height = static_cast<long>(j - i);
          r.length_sq = 1;
          locals.push_back(std::move(r));
        }
    } else {
      Diagram g = diagram_for(fd.spec.type, n);
      fd.cartan = cartan_from_diagram(g, n);
      locals = generate_roots(fd.cartan, g, n);
      if (locals.size() != expected_root_count(fd.spec.type, n))
        throw StructureConstantError("root count mismatch for " + fd.spec.to_string());
    }

    // positives by height, then lexicographically from the first simple
    // coordinate (so the height-1 block lists the simple roots in Cartan
    // order); the matching negatives follow
    std::vector<LocalRoot> pos;
    for (auto& r : locals)
      if (r.height > 0) pos.push_back(r);
    std::sort(pos.begin(), pos.end(), [](const LocalRoot& a, const LocalRoot& b) {
      if (a.height != b.height) return a.height < b.height;
      return a.simple_coords > b.simple_coords;
    });
    if (2 * pos.size() != locals.size())
      throw StructureConstantError("root system is not symmetric");

    auto push_root = [&](const LocalRoot& lr, int sign) -> std::size_t {
      Root r;
      r.factor = static_cast<int>(fi);
      r.height = sign * lr.height;
      r.length_sq = lr.length_sq;
      r.simple_coords.resize(lr.simple_coords.size());
      for (std::size_t k = 0; k < lr.simple_coords.size(); ++k)
        r.simple_coords[k] = sign * lr.simple_coords[k];

      r.char_coords.assign(rd.rank, 0);
      r.coroot_coords.assign(rd.rank, 0);
      if (fd.spec.is_gl) {
        // eps-basis: root = eps_i - eps_j, coroot likewise
        // reconstruct i, j from the simple coordinates
        std::vector<Int> eps(n, 0);
        for (int k = 0; k < n - 1; ++k) {
          eps[k] += r.simple_coords[k];
          eps[k + 1] -= r.simple_coords[k];
        }
        for (int k = 0; k < n; ++k) {
          r.char_coords[off + k] = eps[k];
          r.coroot_coords[off + k] = eps[k];
        }
      } else {
        for (int i = 0; i < n; ++i) {
          Int ci = 0; // <beta, coroot_i>
          for (int j = 0; j < n; ++j) ci += fd.cartan(i, j) * r.simple_coords[j];
          r.char_coords[off + i] = ci;
        }
        Diagram g = diagram_for(fd.spec.type, n);
        for (int j = 0; j < n; ++j) {
          Int num = r.simple_coords[j] * g.d[j];
          if (num % r.length_sq != 0)
            throw StructureConstantError("non-integral coroot coordinate");
          r.coroot_coords[off + j] = num / r.length_sq;
        }
      }
      rd.roots.push_back(std::move(r));
      return rd.roots.size() - 1;
    };

    std::vector<std::size_t> pos_idx, neg_idx;
    for (const auto& lr : pos) pos_idx.push_back(push_root(lr, +1));
    for (const auto& lr : pos) neg_idx.push_back(push_root(lr, -1));
    rd.negative_of.resize(rd.roots.size());
    for (std::size_t k = 0; k < pos.size(); ++k) {
      rd.negative_of[pos_idx[k]] = neg_idx[k];
      rd.negative_of[neg_idx[k]] = pos_idx[k];
    }
    for (std::size_t k = 0; k < pos.size(); ++k) {
      rd.positive_roots.push_back(pos_idx[k]);
      fd.roots.push_back(pos_idx[k]);
    }
    for (std::size_t k = 0; k < pos.size(); ++k) fd.roots.push_back(neg_idx[k]);
    for (std::size_t k = 0; k < pos.size(); ++k)
      if (pos[k].height == 1) {
        rd.simple_roots.push_back(pos_idx[k]);
        fd.simple_roots.push_back(pos_idx[k]);
      }

    // invariant degrees: dual partition of heights, plus degree-1
    // generators from the central torus (GL determinant direction)
    std::vector<long> heights;
    for (const auto& lr : pos) heights.push_back(lr.height);
    std::vector<int> exps = exponents_from_heights(heights);
    fd.degrees.clear();
    for (std::size_t k = fd.simple_roots.size(); k < fd.lattice_rank; ++k)
      fd.degrees.push_back(1);
    for (int m : exps) fd.degrees.push_back(m + 1);
    std::sort(fd.degrees.begin(), fd.degrees.end());
  }

  rd.lambda_circ.assign(rd.rank, 0);
  for (std::size_t i : rd.positive_roots)
    for (std::size_t k = 0; k < rd.rank; ++k)
      rd.lambda_circ[k] += rd.roots[i].coroot_coords[k];

  return rd;
}

RootDatum build_root_datum(const std::string& spec_text) {
  return build_root_datum(parse_group_spec(spec_text));
}

HeightsAndExponents heights_and_exponents(const RootDatum& rd) {
  HeightsAndExponents out;
  for (std::size_t i : rd.positive_roots) out.height_multiset.push_back(rd.roots[i].height);
  std::sort(out.height_multiset.begin(), out.height_multiset.end());
  std::size_t sum_check = 0;
  for (const FactorData& fd : rd.factors) {
    out.degrees.push_back(fd.degrees);
    for (int d : fd.degrees) {
      out.merged_degrees.push_back(d);
      sum_check += static_cast<std::size_t>(d - 1);
    }
  }
  std::sort(out.merged_degrees.begin(), out.merged_degrees.end());
  if (sum_check != rd.positive_roots.size())
    throw StructureConstantError("degree/positive-root count mismatch");
  return out;
}

// --- prime tables ---------------------------------------------------------

std::vector<std::uint64_t> bad_primes(const GroupFactor& f) {
  if (f.is_gl) return {};
  switch (f.type) {
    case CartanType::A: return {};
    case CartanType::B:
    case CartanType::C:
    case CartanType::D: return {2};
    case CartanType::G:
    case CartanType::F: return {2, 3};
    case CartanType::E: return f.rank == 8 ? std::vector<std::uint64_t>{2, 3, 5}
                                           : std::vector<std::uint64_t>{2, 3};
  }
  return {};
}

std::vector<std::uint64_t> bad_primes(const RootDatum& rd) {
  std::vector<std::uint64_t> out;
  for (const FactorData& fd : rd.factors)
    for (std::uint64_t p : bad_primes(fd.spec))
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_good_prime(const RootDatum& rd, std::uint64_t p) {
  if (p == 0) return true;
  for (std::uint64_t q : bad_primes(rd))
    if (q == p) return false;
  return true;
}

Int very_good_product(const GroupFactor& f) {
  if (f.is_gl) return 1;
  Int n = 1;
  for (std::uint64_t p : bad_primes(f)) n *= Int(p);
  if (f.type == CartanType::A)
    for (std::uint64_t p : prime_factors(Int(f.rank + 1))) n *= Int(p);
  return n;
}

Int very_good_product(const RootDatum& rd) {
  Int n = 1;
  for (const FactorData& fd : rd.factors)
    for (std::uint64_t p : prime_factors(very_good_product(fd.spec)))
      if (n % Int(p) != 0) n *= Int(p);
  return n;
}

bool is_very_good_prime(const RootDatum& rd, std::uint64_t p) {
  if (p == 0) return true;
  return very_good_product(rd) % Int(p) != 0;
}

// --- conditions -------------------------------------------------------------

ConditionProfile condition_check(const RootDatum& rd, std::uint64_t p,
                                 const std::optional<Int>& kappa_gram_det) {
  if (p != 0 && !is_prime_u64(p)) throw ConfigError("characteristic must be 0 or prime");
  ConditionProfile cp;
  cp.p = p;

  cp.good = is_good_prime(rd, p);
  if (!cp.good) cp.witness = "p=" + std::to_string(p) + " is a bad prime";

  auto lattice_matrix = [&](bool chars) {
    IntMatrix m(rd.rank, rd.simple_roots.size());
    for (std::size_t j = 0; j < rd.simple_roots.size(); ++j) {
      const Root& r = rd.roots[rd.simple_roots[j]];
      const auto& v = chars ? r.char_coords : r.coroot_coords;
      for (std::size_t i = 0; i < rd.rank; ++i) m(i, j) = v[i];
    }
    return m;
  };

  cp.c1 = true;
  if (p != 0) {
    for (std::size_t i : rd.positive_roots) {
      const Root& r = rd.roots[i];
      bool all_zero = true;
      for (const Int& c : r.char_coords)
        if (c % Int(p) != 0) {
          all_zero = false;
          break;
        }
      if (all_zero) {
        cp.c1 = false;
        std::string coords;
        for (std::size_t k = 0; k < r.simple_coords.size(); ++k)
          coords += (k ? "," : "") + r.simple_coords[k].str();
        if (cp.witness.empty())
          cp.witness = "d(alpha) = 0 for root (" + coords + ") of factor " +
                       rd.factors[r.factor].spec.to_string();
        break;
      }
    }
  }

  cp.cochar_torsion_free = true;
  cp.char_torsion_free = true;
  if (p != 0) {
    std::size_t t = prime_torsion(lattice_matrix(false), p);
    if (t != 0) {
      cp.cochar_torsion_free = false;
      if (cp.witness.empty())
        cp.witness = "cocharacter lattice has " + std::to_string(t) +
                     " elementary divisor(s) divisible by " + std::to_string(p);
    }
    t = prime_torsion(lattice_matrix(true), p);
    if (t != 0) {
      cp.char_torsion_free = false;
      if (cp.witness.empty())
        cp.witness = "character lattice has " + std::to_string(t) +
                     " elementary divisor(s) divisible by " + std::to_string(p);
    }
  }

  cp.c2 = cp.good && cp.cochar_torsion_free;
  cp.c3 = cp.c2 && cp.char_torsion_free;

  if (kappa_gram_det) {
    const Int& det = *kappa_gram_det;
    cp.kappa_unit = (p == 0) ? det != 0 : det % Int(p) != 0;
    if (!cp.kappa_unit && cp.witness.empty())
      cp.witness = "invariant-form Gram determinant " + det.str() +
                   " vanishes mod " + std::to_string(p);
  } else {
    // Torsion route: for this group class the two certificates agree.
    cp.kappa_unit = cp.c3;
  }
  cp.c4 = cp.c3 && cp.kappa_unit;
  return cp;
}

// --- Weyl group -------------------------------------------------------------

Int known_weyl_order(const RootDatum& rd) {
  Int order = 1;
  for (const FactorData& fd : rd.factors) {
    Int f = 1;
    const int n = fd.spec.rank;
    auto factorial = [](int k) {
      Int r = 1;
      for (int i = 2; i <= k; ++i) r *= i;
      return r;
    };
    if (fd.spec.is_gl) {
      f = factorial(n);
    } else {
      switch (fd.spec.type) {
        case CartanType::A: f = factorial(n + 1); break;
        case CartanType::B:
        case CartanType::C:
          f = factorial(n);
          for (int i = 0; i < n; ++i) f *= 2;
          break;
        case CartanType::D:
          f = factorial(n);
          for (int i = 0; i + 1 < n; ++i) f *= 2;
          break;
        case CartanType::G: f = 12; break;
        case CartanType::F: f = 1152; break;
        case CartanType::E:
          f = fd.spec.rank == 6 ? Int(51840)
                                : (fd.spec.rank == 7 ? Int(2903040) : Int(696729600));
          break;
      }
    }
    order *= f;
  }
  return order;
}

IntMatrix simple_reflection_cochar(const RootDatum& rd, std::size_t simple_index) {
  const Root& a = rd.roots[simple_index];
  IntMatrix m = IntMatrix::identity(rd.rank);
  for (std::size_t i = 0; i < rd.rank; ++i)
    for (std::size_t j = 0; j < rd.rank; ++j)
      m(i, j) -= a.coroot_coords[i] * a.char_coords[j];
  return m;
}

IntMatrix simple_reflection_char(const RootDatum& rd, std::size_t simple_index) {
  const Root& a = rd.roots[simple_index];
  IntMatrix m = IntMatrix::identity(rd.rank);
  for (std::size_t i = 0; i < rd.rank; ++i)
    for (std::size_t j = 0; j < rd.rank; ++j)
      m(i, j) -= a.char_coords[i] * a.coroot_coords[j];
  return m;
}

std::vector<IntMatrix> weyl_elements(const RootDatum& rd, std::uint64_t cap) {
  Int order = known_weyl_order(rd);
  if (order > Int(cap))
    throw WeylTooLarge("Weyl group order " + order.str() + " exceeds cap " +
                       std::to_string(cap) + "; use per-reflection audits instead");

  std::vector<IntMatrix> gens;
  for (std::size_t s : rd.simple_roots) gens.push_back(simple_reflection_cochar(rd, s));

  std::set<std::vector<Int>> seen;
  std::vector<IntMatrix> elements;
  std::vector<IntMatrix> frontier{IntMatrix::identity(rd.rank)};
  seen.insert(frontier[0].data());
  while (!frontier.empty()) {
    std::vector<IntMatrix> next;
    for (const IntMatrix& w : frontier) {
      elements.push_back(w);
      for (const IntMatrix& g : gens) {
        IntMatrix wg = mat_mul(g, w);
        if (seen.insert(wg.data()).second) next.push_back(std::move(wg));
      }
    }
    frontier = std::move(next);
  }
  if (Int(elements.size()) != order)
    throw StructureConstantError("Weyl enumeration produced " +
                                 std::to_string(elements.size()) + " elements, expected " +
                                 order.str());
  return elements;
}

} // namespace kkit
