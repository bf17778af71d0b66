#pragma once

#include "kkit/chevalley.hpp"
#include "kkit/slice.hpp"

#include <cstdint>
#include <vector>

namespace kkit {

// c_i(x) = trace of the i-th exterior power of x, computed as the sum of
// the principal i x i minors (exact determinant expansions).
std::vector<std::uint64_t> invariant_map_gl_fp(const FpMatrix& x, const GF& f);
std::vector<Rat> invariant_map_gl_rat(const RatMatrix& x);

// A gl(n) element in its defining n x n matrix; requires a single GL factor.
FpMatrix gl_defining_matrix_fp(const ChevalleyAlgebra& alg, const FpVec& x, const GF& f);
RatMatrix gl_defining_matrix_rat(const ChevalleyAlgebra& alg, const IntVec& x);

struct SliceChartAudit {
  bool pass = false;
  std::size_t points = 0;
  std::size_t distinct_images = 0;
  std::vector<std::uint64_t> collision_witness; // coefficients of a clash, if any
};
// Enumerates all q^n points of S(F_q) and checks that the invariant map
// is a bijection onto A^n(F_q). Throws BruteForceTooLarge outside n <= 4,
// q <= 11.
SliceChartAudit slice_chart_audit_gl(const ChevalleyAlgebra& alg, const Slice& slice,
                                     std::uint64_t q);

struct KappaForm {
  IntMatrix gram;
  Int det = 0;
  std::vector<std::uint64_t> disc_primes;
};
// Symmetric invariant form: trace form in the defining representation
// for GL and classical factors (realized as an exact rescale of the
// Killing Gram block), the Killing form for exceptional factors.
// Verifies invariance on all basis triples over Z and that the Gram
// determinant is a unit in Z[1/N]; throws DegenerateForm otherwise.
KappaForm kappa_form(const ChevalleyAlgebra& alg, const Int& inverted_n);

// convenience: condition profile with the c4 leg certified by the form
ConditionProfile condition_profile_with_kappa(const ChevalleyAlgebra& alg,
                                              const KappaForm& kappa, std::uint64_t p);

// kappa(x, y) over F_p
std::uint64_t kappa_pair_fp(const KappaForm& kappa, const FpVec& x, const FpVec& y,
                            const GF& f);

struct ChevalleyRestrictionCheck {
  bool pass = false;
  std::size_t samples = 0;
};
// Restriction to the diagonal torus equals the elementary symmetric
// polynomials: seeded random diagonal matrices over F_p.
ChevalleyRestrictionCheck chevalley_restriction_check(std::size_t n, std::uint64_t p,
                                                      std::size_t samples,
                                                      std::uint64_t seed);

struct ConjugationInvarianceCheck {
  bool pass = false;
  std::size_t samples = 0;
};
// c_i(u x u^{-1}) = c_i(x) for u ranging over exponentials of root
// vectors in the defining representation of gl(n).
ConjugationInvarianceCheck conjugation_invariance_check(std::size_t n, std::uint64_t p,
                                                        std::size_t samples,
                                                        std::uint64_t seed);

} // namespace kkit
