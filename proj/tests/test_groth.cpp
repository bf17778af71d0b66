#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kkit/errors.hpp"
#include "kkit/groth.hpp"

using namespace kkit;

namespace {

FpMatrix make(std::size_t n, std::vector<std::uint64_t> entries) {
  FpMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
  return m;
}

} // namespace

TEST_CASE("flag enumeration counts") {
  // complete flags of F_q^2 are the q+1 lines; for n=3 there are
  // (q^2+q+1)(q+1) chains
  CHECK(all_complete_flags(2, 3).size() == 4);
  CHECK(all_complete_flags(2, 5).size() == 6);
  CHECK(all_complete_flags(3, 2).size() == 21);
  CHECK(all_complete_flags(1, 7).size() == 1);
  CHECK_THROWS_AS(all_complete_flags(4, 2), BruteForceTooLarge);
}

TEST_CASE("stable flags of pinned matrices") {
  SUBCASE("the regular nilpotent E12 in gl2(F3) fixes exactly one flag") {
    std::vector<Flag> flags = stable_flags_gl(make(2, {0, 1, 0, 0}), 3);
    REQUIRE(flags.size() == 1);
    // the line is spanned by e1
    CHECK(flags[0].steps[0](0, 0) == 1);
    CHECK(flags[0].steps[0](0, 1) == 0);
  }
  SUBCASE("diag(1,2) in gl2(F5) fixes exactly two flags") {
    CHECK(stable_flags_gl(make(2, {1, 0, 0, 2}), 5).size() == 2);
  }
  SUBCASE("zero is stable on every flag") {
    CHECK(stable_flags_gl(FpMatrix(2, 2), 3).size() == 4);
    CHECK(stable_flags_gl(FpMatrix(3, 3), 2).size() == 21);
  }
  SUBCASE("a Jordan block with repeated eigenvalue fixes one flag") {
    CHECK(stable_flags_gl(make(2, {3, 1, 0, 3}), 5).size() == 1);
  }
  SUBCASE("regular nilpotent in gl3(F2)") {
    CHECK(stable_flags_gl(make(3, {0, 1, 0, 0, 0, 1, 0, 0, 0}), 2).size() == 1);
  }
}

TEST_CASE("fiber count audits") {
  for (std::size_t n : {1ull, 2ull, 3ull}) {
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
      GrothFiberReport rep = groth_fiber_audit(n, q, 50, 1234);
      CHECK(rep.samples == 50);
      CHECK(rep.mismatches == 0);
      CHECK(rep.nilpotent_unique_flag);
    }
  }
  CHECK_THROWS_AS(groth_fiber_audit(3, 11, 5, 0), BruteForceTooLarge);
}
