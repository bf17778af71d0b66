#include "kkit/smith.hpp"

#include "kkit/errors.hpp"

#include <algorithm>
#include <optional>

namespace kkit {

namespace {

struct Workspace {
  IntMatrix a;
  IntMatrix left, left_inv;   // row ops; left_inv accumulates inverse ops
  IntMatrix right, right_inv; // col ops

  explicit Workspace(const IntMatrix& m)
      : a(m),
        left(IntMatrix::identity(m.rows())),
        left_inv(IntMatrix::identity(m.rows())),
        right(IntMatrix::identity(m.cols())),
        right_inv(IntMatrix::identity(m.cols())) {}

  // row_i -= q * row_j on a and left; inverse op on left_inv is col_j += q * col_i
  void row_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) -= q * a(j, c);
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) -= q * left(j, c);
    for (std::size_t r = 0; r < left_inv.rows(); ++r) left_inv(r, j) += q * left_inv(r, i);
  }
  void col_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) -= q * a(r, j);
    for (std::size_t r = 0; r < right.rows(); ++r) right(r, i) -= q * right(r, j);
    for (std::size_t c = 0; c < right_inv.cols(); ++c) right_inv(j, c) += q * right_inv(i, c);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    a.swap_rows(i, j);
    left.swap_rows(i, j);
    left_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    a.swap_cols(i, j);
    right.swap_cols(i, j);
    right_inv.swap_rows(i, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = -left(i, c);
    for (std::size_t r = 0; r < left_inv.rows(); ++r) left_inv(r, i) = -left_inv(r, i);
  }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  Workspace w(m);
  const std::size_t n = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < n; ++t) {
    // pivot-magnitude heuristic: smallest nonzero entry keeps growth down
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m.rows(); ++i)
      for (std::size_t j = t; j < m.cols(); ++j) {
        if (w.a(i, j) == 0) continue;
        if (!best || abs_int(w.a(i, j)) < abs_int(w.a(best->first, best->second)))
          best = {i, j};
      }
    if (!best) break; // all remaining entries vanish
    w.swap_rows(t, best->first);
    w.swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i) {
        if (w.a(i, t) == 0) continue;
        Int q = w.a(i, t) / w.a(t, t);
        w.row_axpy(i, t, q);
        if (w.a(i, t) != 0) {
          w.swap_rows(t, i); // remainder is smaller; euclid step
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < m.cols(); ++j) {
        if (w.a(t, j) == 0) continue;
        Int q = w.a(t, j) / w.a(t, t);
        w.col_axpy(j, t, q);
        if (w.a(t, j) != 0) {
          w.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block for the divisor chain
      std::optional<std::pair<std::size_t, std::size_t>> bad;
      for (std::size_t i = t + 1; i < m.rows() && !bad; ++i)
        for (std::size_t j = t + 1; j < m.cols(); ++j)
          if (w.a(i, j) % w.a(t, t) != 0) {
            bad = {i, j};
            break;
          }
      if (!bad) break;
      w.row_axpy(t, bad->first, Int(-1)); // fold offending row into pivot row
    }
    if (w.a(t, t) < 0) w.negate_row(t);
  }

  SmithForm s;
  s.divisors.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.divisors[i] = w.a(i, i);
  s.left = std::move(w.left);
  s.left_inv = std::move(w.left_inv);
  s.right = std::move(w.right);
  s.right_inv = std::move(w.right_inv);
  return s;
}

std::size_t prime_torsion(const IntMatrix& m, std::uint64_t p) {
  SmithForm s = smith_normal_form(m);
  std::size_t count = 0;
  for (const Int& d : s.divisors)
    if (d != 0 && d % Int(p) == 0) ++count;
  return count;
}

std::vector<std::uint64_t> torsion_primes(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<std::uint64_t> out;
  for (const Int& d : s.divisors) {
    if (d == 0) continue;
    for (std::uint64_t p : prime_factors(d))
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool unit_in_localization(const Int& v, const Int& n) {
  if (v == 0) return false;
  Int m = abs_int(v);
  for (std::uint64_t p : prime_factors(m))
    if (n % Int(p) != 0) return false;
  return true;
}

// Columns of `cand` (dependencies allowed) span a direct summand over
// Z[1/N] iff every nonzero elementary divisor is a unit there. Returns
// the rank as well for the fullness check at the end of the search.
bool span_is_summand(const IntMatrix& cand, const Int& n, std::size_t* rank_out = nullptr) {
  SmithForm s = smith_normal_form(cand);
  std::size_t rank = 0;
  bool ok = true;
  for (const Int& d : s.divisors) {
    if (d == 0) continue;
    ++rank;
    if (!unit_in_localization(d, n)) ok = false;
  }
  if (rank_out) *rank_out = rank;
  return ok;
}

IntMatrix with_std_columns(const IntMatrix& gens, const std::vector<std::size_t>& idx,
                           std::size_t ambient) {
  IntMatrix m(ambient, gens.cols() + idx.size());
  for (std::size_t i = 0; i < ambient; ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) m(i, j) = gens(i, j);
  for (std::size_t k = 0; k < idx.size(); ++k) m(idx[k], gens.cols() + k) = 1;
  return m;
}

bool extend(const IntMatrix& gens, std::size_t ambient, const Int& n,
            std::size_t need, std::size_t from, std::vector<std::size_t>& sel) {
  if (sel.size() == need) {
    std::size_t rank = 0;
    span_is_summand(with_std_columns(gens, sel, ambient), n, &rank);
    return rank == ambient;
  }
  for (std::size_t i = from; i + (need - sel.size()) <= ambient; ++i) {
    sel.push_back(i);
    if (span_is_summand(with_std_columns(gens, sel, ambient), n) &&
        extend(gens, ambient, n, need, i + 1, sel))
      return true;
    sel.pop_back();
  }
  return false;
}

} // namespace

std::vector<std::size_t> integral_basis_complement(const IntMatrix& sublattice_gens,
                                                   std::size_t ambient_rank,
                                                   const Int& inverted_n) {
  if (sublattice_gens.rows() != ambient_rank)
    throw NoIntegralComplement("generator matrix has wrong ambient rank");
  if (!span_is_summand(sublattice_gens, inverted_n))
    throw NoIntegralComplement("sublattice is not a direct summand over Z[1/N]");

  const std::size_t rank = rank_int(sublattice_gens);
  const std::size_t need = ambient_rank - rank;
  std::vector<std::size_t> sel;
  if (!extend(sublattice_gens, ambient_rank, inverted_n, need, 0, sel))
    throw NoIntegralComplement("no standard-basis completion over Z[1/N]");
  return sel;
}

} // namespace kkit
