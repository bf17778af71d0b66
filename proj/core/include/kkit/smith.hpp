#pragma once

#include "kkit/matrix.hpp"

#include <cstdint>
#include <vector>

namespace kkit {

// left * M * right is diagonal with the divisor chain d_1 | d_2 | ...;
// left_inv and right_inv are the exact inverses, so the original matrix
// is recoverable as left_inv * diag * right_inv.
struct SmithForm {
  std::vector<Int> divisors; // nonnegative, padded with zeros to min(r,c)
  IntMatrix left, right;
  IntMatrix left_inv, right_inv;

  IntMatrix diagonal(std::size_t rows, std::size_t cols) const {
    IntMatrix d(rows, cols);
    for (std::size_t i = 0; i < divisors.size(); ++i) d(i, i) = divisors[i];
    return d;
  }
};

SmithForm smith_normal_form(const IntMatrix& m);

// Number of elementary divisors divisible by p; 0 means the cokernel
// has no p-torsion.
std::size_t prime_torsion(const IntMatrix& m, std::uint64_t p);

// Primes dividing some nonzero elementary divisor.
std::vector<std::uint64_t> torsion_primes(const IntMatrix& m);

// Columns of `sublattice_gens` generate a sublattice of Z^ambient_rank.
// Returns the lexicographically minimal index set S of standard basis
// vectors such that gens + {e_i : i in S} span the ambient lattice over
// Z[1/N] (every prime factor of the completed determinant divides N).
// Throws NoIntegralComplement when the generators are not a direct
// summand over Z[1/N] or no standard-vector completion exists.
std::vector<std::size_t> integral_basis_complement(const IntMatrix& sublattice_gens,
                                                   std::size_t ambient_rank,
                                                   const Int& inverted_n);

} // namespace kkit
