#pragma once

#include "kkit/numeric.hpp"

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace kkit {

template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}
  Matrix(std::size_t r, std::size_t c, std::vector<T> entries)
      : rows_(r), cols_(c), data_(std::move(entries)) {
    assert(data_.size() == rows_ * cols_);
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix transposed() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using FpMatrix = Matrix<std::uint64_t>;

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  assert(a.cols() == b.rows());
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& x) {
  assert(a.cols() == x.size());
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != T(0)) y[i] += a(i, j) * x[j];
  return y;
}

// --- prime field context ----------------------------------------------------

// Residues live in [0, p) as uint64; p < 2^31 keeps products in range.
struct GF {
  std::uint64_t p;
  explicit GF(std::uint64_t prime) : p(prime) {}
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b % p) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  std::uint64_t from_int(const Int& v) const {
    Int r = v % Int(p);
    if (r < 0) r += Int(p);
    return r.convert_to<std::uint64_t>();
  }
};

FpMatrix reduce_mod(const IntMatrix& m, const GF& f);
RatMatrix to_rational(const IntMatrix& m);
FpMatrix mat_mul_fp(const FpMatrix& a, const FpMatrix& b, const GF& f);
std::vector<std::uint64_t> mat_vec_fp(const FpMatrix& a,
                                      const std::vector<std::uint64_t>& x, const GF& f);

// --- elimination ------------------------------------------------------------

std::size_t rank_fp(FpMatrix m, const GF& f);
std::size_t rank_rat(RatMatrix m);
std::size_t rank_int(const IntMatrix& m); // rank over Q

// Columns span the null space {v : M v = 0}; vectors are linearly
// independent (reduced echelon construction).
FpMatrix kernel_fp(const FpMatrix& m, const GF& f);
RatMatrix kernel_rat(const RatMatrix& m);

// det by fraction-free Bareiss elimination
Int det_bareiss(IntMatrix m);
std::uint64_t det_fp(FpMatrix m, const GF& f);

bool solve_fp(const FpMatrix& a, const std::vector<std::uint64_t>& b,
              std::vector<std::uint64_t>& x, const GF& f);

} // namespace kkit
