#include "kkit/matrix.hpp"

namespace kkit {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(const Int& n) {
  std::vector<std::uint64_t> out;
  Int m = abs_int(n);
  if (m <= 1) return out;
  for (Int d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d.convert_to<std::uint64_t>());
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m.convert_to<std::uint64_t>());
  return out;
}

FpMatrix reduce_mod(const IntMatrix& m, const GF& f) {
  FpMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = f.from_int(m(i, j));
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

FpMatrix mat_mul_fp(const FpMatrix& a, const FpMatrix& b, const GF& f) {
  assert(a.cols() == b.rows());
  FpMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
    }
  return c;
}

std::vector<std::uint64_t> mat_vec_fp(const FpMatrix& a,
                                      const std::vector<std::uint64_t>& x, const GF& f) {
  assert(a.cols() == x.size());
  std::vector<std::uint64_t> y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && x[j] != 0) y[i] = f.add(y[i], f.mul(a(i, j), x[j]));
  return y;
}

namespace {

// In-place reduction to row echelon form; returns pivot columns.
std::vector<std::size_t> rref_fp(FpMatrix& m, const GF& f) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(row, piv);
    const std::uint64_t inv = f.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const std::uint64_t c = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::size_t> rref_rat(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(row, piv);
    const Rat inv = Rat(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rat c = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= c * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

std::size_t rank_fp(FpMatrix m, const GF& f) { return rref_fp(m, f).size(); }

std::size_t rank_rat(RatMatrix m) { return rref_rat(m).size(); }

std::size_t rank_int(const IntMatrix& m) { return rank_rat(to_rational(m)); }

FpMatrix kernel_fp(const FpMatrix& m, const GF& f) {
  FpMatrix r = m;
  std::vector<std::size_t> pivots = rref_fp(r, f);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  const std::size_t dim = m.cols() - pivots.size();
  FpMatrix basis(m.cols(), dim);
  std::size_t k = 0;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    basis(free_col, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis(pivots[i], k) = f.neg(r(i, free_col));
    ++k;
  }
  return basis;
}

RatMatrix kernel_rat(const RatMatrix& m) {
  RatMatrix r = m;
  std::vector<std::size_t> pivots = rref_rat(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  const std::size_t dim = m.cols() - pivots.size();
  RatMatrix basis(m.cols(), dim);
  std::size_t k = 0;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    basis(free_col, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis(pivots[i], k) = -r(i, free_col);
    ++k;
  }
  return basis;
}

Int det_bareiss(IntMatrix m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = num / prev; // exact by Bareiss
      }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

std::uint64_t det_fp(FpMatrix m, const GF& f) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      m.swap_rows(k, piv);
      det = f.neg(det);
    }
    det = f.mul(det, m(k, k));
    const std::uint64_t inv = f.inv(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      const std::uint64_t c = f.mul(m(i, k), inv);
      for (std::size_t j = k; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(c, m(k, j)));
    }
  }
  return det;
}

bool solve_fp(const FpMatrix& a, const std::vector<std::uint64_t>& b,
              std::vector<std::uint64_t>& x, const GF& f) {
  assert(a.rows() == b.size());
  FpMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i] % f.p;
  }
  std::vector<std::size_t> pivots = rref_fp(aug, f);
  x.assign(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == a.cols()) return false; // inconsistent
    x[pivots[i]] = aug(i, a.cols());
  }
  return true;
}

} // namespace kkit
