#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace kkit {

// All lattice arithmetic is exact; entries exceed 64 bits on the larger
// Cartan-type matrices.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool is_prime_u64(std::uint64_t n);

// Prime factors of |n| in increasing order, without multiplicity.
// Intended for determinants and elementary divisors of desk-scale
// matrices; trial division is plenty.
std::vector<std::uint64_t> prime_factors(const Int& n);

// Deterministic uniform sampling; std::uniform_int_distribution is
// implementation-defined, which would break byte-identical reports.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n), n > 0, by rejection
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }
};

// Per-task seed derivation so parallel audits stay order-independent.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  return g.next();
}

} // namespace kkit
