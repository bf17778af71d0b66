#pragma once

#include <string>
#include <vector>

namespace kkit {

enum class CartanType : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct GroupFactor {
  bool is_gl = false;
  CartanType type = CartanType::A; // ignored for GL
  int rank = 0;                    // Cartan rank, or n for GL(n)

  std::string to_string() const;
};

struct GroupSpec {
  std::vector<GroupFactor> factors;
  std::string to_string() const;
};

// Grammar: spec := factor ("*" factor)* ; factor := "SC(" type rank ")" | "GL(" n ")"
// e.g. "SC(A2)*GL(3)". Throws SpecParseError / UnsupportedType.
GroupSpec parse_group_spec(const std::string& text);

} // namespace kkit
