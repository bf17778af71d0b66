#pragma once

#include "kkit/matrix.hpp"

#include <cstdint>

namespace kkit {

// Exact scalar in the prime field of the stated characteristic: the
// rationals for characteristic 0, residues in [0, p) otherwise.
struct FieldScalar {
  std::uint64_t characteristic = 0;
  Rat rational;          // used when characteristic == 0
  std::uint64_t residue = 0; // used when characteristic > 0

  static FieldScalar of_rational(Rat v) {
    FieldScalar s;
    s.characteristic = 0;
    s.rational = std::move(v);
    return s;
  }
  static FieldScalar of_mod(std::uint64_t p, std::uint64_t v) {
    FieldScalar s;
    s.characteristic = p;
    s.residue = v % p;
    return s;
  }
};

// Null-space basis over the prime field of the given characteristic;
// exactly one of `rat` / `fp` is populated.
struct KernelBasis {
  std::uint64_t characteristic = 0;
  RatMatrix rat;
  FpMatrix fp;
  std::size_t dim() const { return characteristic == 0 ? rat.cols() : fp.cols(); }
};

KernelBasis kernel(const IntMatrix& m, std::uint64_t characteristic);

} // namespace kkit
