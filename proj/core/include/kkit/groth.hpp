#pragma once

#include "kkit/matrix.hpp"

#include <cstdint>
#include <vector>

namespace kkit {

// Complete flag 0 < V_1 < ... < V_n = F_q^n; V_i stored as an i x n
// reduced-echelon basis matrix, so flag equality is syntactic.
struct Flag {
  std::vector<FpMatrix> steps; // steps[i] has i+1 rows

  bool operator==(const Flag& o) const = default;
};

// All complete flags of F_q^n. Envelope n <= 3, q <= 7: throws
// BruteForceTooLarge outside it.
std::vector<Flag> all_complete_flags(std::size_t n, std::uint64_t q);

// Exactly the flags with x V_i <= V_i for all i.
std::vector<Flag> stable_flags_gl(const FpMatrix& x, std::uint64_t q);

struct GrothFiberSample {
  std::vector<std::uint64_t> entries; // row-major witness matrix
  std::size_t flags = 0;
  std::size_t torus_fiber = 0;
};

struct GrothFiberReport {
  std::size_t attempted = 0;
  std::size_t discarded_nonsplit = 0;
  std::size_t discarded_irregular = 0;
  std::size_t samples = 0;     // accepted split regular samples
  std::size_t mismatches = 0;  // |flags| != |torus fiber|
  std::vector<GrothFiberSample> witnesses; // mismatching samples
  bool nilpotent_unique_flag = false; // principal nilpotent has exactly one flag
  bool pass() const { return mismatches == 0 && nilpotent_unique_flag; }
};

// For sampled regular x in gl_n(F_q) with split characteristic
// polynomial: |{x-stable flags}| equals |{h in t(F_q) : e_i(h) = c_i(x)}|,
// both brute-forced. Non-split samples are discarded and counted.
GrothFiberReport groth_fiber_audit(std::size_t n, std::uint64_t q, std::size_t n_samples,
                                   std::uint64_t seed);

} // namespace kkit
