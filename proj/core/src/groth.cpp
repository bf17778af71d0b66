#include "kkit/groth.hpp"

#include "kkit/errors.hpp"
#include "kkit/quotient.hpp"

#include <functional>

namespace kkit {

namespace {

// reduced-echelon bases of all d-dimensional subspaces of F_q^n
std::vector<FpMatrix> subspaces(std::size_t n, std::size_t d, const GF& f) {
  std::vector<FpMatrix> out;
  if (d == 0) {
    out.emplace_back(0, n);
    return out;
  }
  // choose pivot columns, then fill free entries right of each pivot
  std::vector<std::size_t> piv(d);
  for (std::size_t i = 0; i < d; ++i) piv[i] = i;
  auto next_subset = [&](std::vector<std::size_t>& s) {
    for (std::size_t i = s.size(); i-- > 0;) {
      if (s[i] + (s.size() - i) < n) {
        ++s[i];
        for (std::size_t j = i + 1; j < s.size(); ++j) s[j] = s[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    std::vector<bool> is_piv(n, false);
    for (std::size_t c : piv) is_piv[c] = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) free_cells.emplace_back(i, j);

    std::uint64_t combos = 1;
    for (std::size_t k = 0; k < free_cells.size(); ++k) combos *= f.p;
    for (std::uint64_t idx = 0; idx < combos; ++idx) {
      FpMatrix m(d, n);
      for (std::size_t i = 0; i < d; ++i) m(i, piv[i]) = 1;
      std::uint64_t t = idx;
      for (const auto& [i, j] : free_cells) {
        m(i, j) = t % f.p;
        t /= f.p;
      }
      out.push_back(std::move(m));
    }
  } while (next_subset(piv));
  return out;
}

bool contains(const FpMatrix& big, const FpMatrix& small, const GF& f) {
  // every row of `small` lies in the row space of `big`
  FpMatrix stacked(big.rows() + small.rows(), big.cols());
  for (std::size_t i = 0; i < big.rows(); ++i)
    for (std::size_t j = 0; j < big.cols(); ++j) stacked(i, j) = big(i, j);
  for (std::size_t i = 0; i < small.rows(); ++i)
    for (std::size_t j = 0; j < big.cols(); ++j) stacked(big.rows() + i, j) = small(i, j);
  return rank_fp(stacked, f) == big.rows();
}

bool stable(const FpMatrix& x, const FpMatrix& v, const GF& f) {
  FpMatrix image(v.rows(), v.cols());
  for (std::size_t i = 0; i < v.rows(); ++i) {
    std::vector<std::uint64_t> row(v.cols());
    for (std::size_t j = 0; j < v.cols(); ++j) row[j] = v(i, j);
    std::vector<std::uint64_t> xrow = mat_vec_fp(x, row, f);
    for (std::size_t j = 0; j < v.cols(); ++j) image(i, j) = xrow[j];
  }
  return contains(v, image, f);
}

} // namespace

std::vector<Flag> all_complete_flags(std::size_t n, std::uint64_t q) {
  if (n > 3 || q > 7)
    throw BruteForceTooLarge("flag enumeration envelope is n <= 3, q <= 7");
  if (!is_prime_u64(q)) throw ConfigError("q must be prime");
  GF f(q);

  std::vector<std::vector<FpMatrix>> by_dim;
  for (std::size_t d = 1; d <= n; ++d) by_dim.push_back(subspaces(n, d, f));

  std::vector<Flag> flags;
  // chains built by depth-first extension with inclusion tests
  std::vector<FpMatrix> chain;
  std::function<void(std::size_t)> extend = [&](std::size_t d) {
    if (d == n) {
      Flag fl;
      fl.steps = chain;
      flags.push_back(std::move(fl));
      return;
    }
    for (const FpMatrix& v : by_dim[d]) {
      if (!chain.empty() && !contains(v, chain.back(), f)) continue;
      chain.push_back(v);
      extend(d + 1);
      chain.pop_back();
    }
  };
  extend(0);
  return flags;
}

std::vector<Flag> stable_flags_gl(const FpMatrix& x, std::uint64_t q) {
  GF f(q);
  std::vector<Flag> out;
  for (Flag& fl : all_complete_flags(x.rows(), q)) {
    bool ok = true;
    for (const FpMatrix& v : fl.steps)
      if (!stable(x, v, f)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(fl));
  }
  return out;
}

namespace {

// split over F_q iff the characteristic polynomial is a product of
// linear factors; factor by repeated root extraction
bool splits_over_fq(const FpMatrix& x, const GF& f) {
  const std::size_t n = x.rows();
  // char poly coefficients: det(T - x) = T^n - c1 T^{n-1} + ... +- cn
  std::vector<std::uint64_t> c = invariant_map_gl_fp(x, f);
  std::vector<std::uint64_t> poly(n + 1, 0); // poly[k] = coeff of T^k
  poly[n] = 1;
  std::uint64_t sign = f.p - 1;
  for (std::size_t i = 1; i <= n; ++i) {
    poly[n - i] = f.mul(sign, c[i - 1]);
    sign = f.neg(sign);
  }
  std::size_t deg = n;
  for (std::uint64_t root = 0; root < f.p && deg > 0;) {
    // synthetic division by (T - root): Horner from the top coefficient
    std::vector<std::uint64_t> quot(deg, 0);
    std::uint64_t carry = 0;
    std::uint64_t rem = 0;
    for (std::size_t k = deg + 1; k-- > 0;) {
      std::uint64_t cur = f.add(poly[k], f.mul(carry, root));
      if (k > 0)
        quot[k - 1] = cur;
      else
        rem = cur;
      carry = cur;
    }
    if (rem == 0) {
      poly.assign(quot.begin(), quot.end());
      --deg;
    } else {
      ++root;
    }
  }
  return deg == 0;
}

std::size_t torus_fiber_count(const FpMatrix& x, const GF& f) {
  const std::size_t n = x.rows();
  std::vector<std::uint64_t> target = invariant_map_gl_fp(x, f);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.p;
  std::size_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    FpMatrix h(n, n);
    std::uint64_t t = idx;
    for (std::size_t k = 0; k < n; ++k) {
      h(k, k) = t % f.p;
      t /= f.p;
    }
    if (invariant_map_gl_fp(h, f) == target) ++count;
  }
  return count;
}

// regular iff the centralizer in gl_n has dimension n: kernel of
// ad(x) acting on n x n matrices
bool regular_in_gl(const FpMatrix& x, const GF& f) {
  const std::size_t n = x.rows();
  FpMatrix ad(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // [x, E_ab] = x E_ab - E_ab x
      for (std::size_t i = 0; i < n; ++i) {
        // (x E_ab)(i, b) = x(i, a)
        ad(i * n + b, a * n + b) = f.add(ad(i * n + b, a * n + b), x(i, a));
        // (E_ab x)(a, j) = x(b, j)
        ad(a * n + i, a * n + b) = f.sub(ad(a * n + i, a * n + b), x(b, i));
      }
    }
  return n * n - rank_fp(ad, f) == n;
}

} // namespace

GrothFiberReport groth_fiber_audit(std::size_t n, std::uint64_t q, std::size_t n_samples,
                                   std::uint64_t seed) {
  if (n > 3 || q > 7)
    throw BruteForceTooLarge("fiber audit envelope is n <= 3, q <= 7");
  GF f(q);
  GrothFiberReport rep;

  // principal nilpotent: sum of E_{i,i+1}; its fiber must be one flag,
  // matching the one-point torus fiber over chi(e)
  FpMatrix e(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) e(i, i + 1) = 1;
  rep.nilpotent_unique_flag =
      stable_flags_gl(e, q).size() == 1 && torus_fiber_count(e, f) == 1;

  std::size_t accepted = 0;
  for (std::uint64_t attempt = 0; accepted < n_samples; ++attempt) {
    if (attempt > 200 * n_samples + 1000)
      throw BruteForceTooLarge("not enough split regular samples in gl_" +
                               std::to_string(n) + "(F_" + std::to_string(q) + ")");
    ++rep.attempted;
    SplitMix64 rng(mix_seed(seed, attempt));
    FpMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) = rng.below(q);
    if (!regular_in_gl(x, f)) {
      ++rep.discarded_irregular;
      continue;
    }
    if (!splits_over_fq(x, f)) {
      ++rep.discarded_nonsplit;
      continue;
    }
    ++accepted;
    ++rep.samples;
    std::size_t flags = stable_flags_gl(x, q).size();
    std::size_t fiber = torus_fiber_count(x, f);
    if (flags != fiber) {
      ++rep.mismatches;
      GrothFiberSample w;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w.entries.push_back(x(i, j));
      w.flags = flags;
      w.torus_fiber = fiber;
      rep.witnesses.push_back(std::move(w));
    }
  }
  return rep;
}

} // namespace kkit
