#pragma once

#include "kkit/group_spec.hpp"
#include "kkit/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kkit {

// One root, carried with its metadata. Coordinates:
//   char_coords    in the basis of X*(T)  (fundamental weights for SC
//                  factors, the epsilon basis for GL factors), global
//                  (zero outside the owning factor's block);
//   coroot_coords  of the associated coroot in the basis of X_*(T);
//   simple_coords  in the simple roots of the owning factor (local).
struct Root {
  std::vector<Int> char_coords;
  std::vector<Int> coroot_coords;
  std::vector<Int> simple_coords;
  int factor = 0;
  long height = 0;
  int length_sq = 1; // 1, 2 or 3; short roots have length one
};

struct FactorData {
  GroupFactor spec;
  std::size_t lattice_offset = 0; // block start in the global lattice basis
  std::size_t lattice_rank = 0;
  std::vector<std::size_t> simple_roots; // global root indices
  std::vector<std::size_t> roots;        // all roots of this factor
  IntMatrix cartan;                      // cartan(i,j) = <alpha_j, coroot_i>
  std::vector<int> degrees;              // invariant degrees, ascending
};

struct RootDatum {
  GroupSpec spec;
  std::size_t rank = 0; // rank of X*(T)
  std::vector<FactorData> factors;
  std::vector<Root> roots;                 // positives of factor 0, its negatives, ...
  std::vector<std::size_t> positive_roots; // indices into roots
  std::vector<std::size_t> simple_roots;
  std::vector<std::size_t> negative_of;    // index of -alpha for each root
  std::vector<Int> lambda_circ;            // sum of positive coroots, X_* coords

  std::size_t num_roots() const { return roots.size(); }
  bool is_single_sc() const {
    return factors.size() == 1 && !factors[0].spec.is_gl;
  }
  bool is_single_gl() const {
    return factors.size() == 1 && factors[0].spec.is_gl;
  }
};

// <lambda, v> for lambda in X* coordinates and v in X_* coordinates.
Int pair_char_cochar(const std::vector<Int>& lambda, const std::vector<Int>& v);

RootDatum build_root_datum(const GroupSpec& spec);
RootDatum build_root_datum(const std::string& spec_text);

struct HeightsAndExponents {
  std::vector<long> height_multiset;       // heights of all positive roots
  std::vector<std::vector<int>> degrees;   // per factor, ascending
  std::vector<int> merged_degrees;         // all factors, ascending
};
HeightsAndExponents heights_and_exponents(const RootDatum& rd);

// --- conditions ---------------------------------------------------------

struct ConditionProfile {
  std::uint64_t p = 0;
  bool c1 = false, c2 = false, c3 = false, c4 = false;
  // the individual hypotheses, so dependent audits can name what failed
  bool good = false;
  bool cochar_torsion_free = false; // X_*(T)/Z coroots has no p-torsion
  bool char_torsion_free = false;   // X*(T)/Z roots has no p-torsion
  bool kappa_unit = false;          // invariant form nondegenerate at p
  std::string witness;              // first failure, human-readable
};

// kappa_gram_det: determinant of the invariant-form Gram matrix, used
// to certify the g = g* condition; when absent, c4 is computed from the
// torsion conditions alone (valid for this group class, where the two
// agree, but the Gram route is the one the audits use).
ConditionProfile condition_check(const RootDatum& rd, std::uint64_t p,
                                 const std::optional<Int>& kappa_gram_det = std::nullopt);

// --- prime tables (configuration) ---------------------------------------

std::vector<std::uint64_t> bad_primes(const GroupFactor& f);
std::vector<std::uint64_t> bad_primes(const RootDatum& rd);
bool is_good_prime(const RootDatum& rd, std::uint64_t p);
bool is_very_good_prime(const RootDatum& rd, std::uint64_t p);
Int very_good_product(const GroupFactor& f);
Int very_good_product(const RootDatum& rd);

// --- Weyl group ----------------------------------------------------------

inline constexpr std::uint64_t kDefaultWeylCap = 51840;

Int known_weyl_order(const RootDatum& rd);

// Lattice automorphisms of X_*(T); closed under composition, generated
// by the simple reflections. Throws WeylTooLarge past the cap.
std::vector<IntMatrix> weyl_elements(const RootDatum& rd,
                                     std::uint64_t cap = kDefaultWeylCap);

// Simple reflection on X_*(T) for the k-th simple root (global index).
IntMatrix simple_reflection_cochar(const RootDatum& rd, std::size_t simple_index);
// Same on X*(T).
IntMatrix simple_reflection_char(const RootDatum& rd, std::size_t simple_index);

} // namespace kkit
