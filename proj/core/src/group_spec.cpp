#include "kkit/group_spec.hpp"

#include "kkit/errors.hpp"

#include <cctype>

namespace kkit {

std::string GroupFactor::to_string() const {
  if (is_gl) return "GL(" + std::to_string(rank) + ")";
  std::string s = "SC(";
  s += static_cast<char>(type);
  s += std::to_string(rank);
  s += ")";
  return s;
}

std::string GroupSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "*";
    s += factors[i].to_string();
  }
  return s;
}

namespace {

void check_rank(CartanType t, int rank) {
  bool ok = false;
  switch (t) {
    case CartanType::A: ok = rank >= 1; break;
    case CartanType::B: ok = rank >= 2; break;
    case CartanType::C: ok = rank >= 2; break;
    case CartanType::D: ok = rank >= 3; break;
    case CartanType::E: ok = rank >= 6 && rank <= 8; break;
    case CartanType::F: ok = rank == 4; break;
    case CartanType::G: ok = rank == 2; break;
  }
  if (!ok)
    throw UnsupportedType("unsupported Cartan type/rank: " +
                          std::string(1, static_cast<char>(t)) + std::to_string(rank));
}

} // namespace

GroupSpec parse_group_spec(const std::string& text) {
  GroupSpec spec;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> void {
    throw SpecParseError("cannot parse group spec '" + text + "': " + why);
  };
  auto expect = [&](char c) {
    if (i >= text.size() || text[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  };
  auto read_int = [&]() -> int {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) fail("expected a rank");
    return std::stoi(text.substr(start, i - start));
  };

  for (;;) {
    if (text.compare(i, 3, "SC(") == 0) {
      i += 3;
      if (i >= text.size()) fail("truncated factor");
      char t = text[i];
      if (t < 'A' || t > 'G')
        throw UnsupportedType("unsupported type letter '" + std::string(1, t) + "'");
      ++i;
      int rank = read_int();
      expect(')');
      GroupFactor f;
      f.is_gl = false;
      f.type = static_cast<CartanType>(t);
      f.rank = rank;
      check_rank(f.type, rank);
      spec.factors.push_back(f);
    } else if (text.compare(i, 3, "GL(") == 0) {
      i += 3;
      int n = read_int();
      expect(')');
      if (n < 1) throw UnsupportedType("GL(n) needs n >= 1");
      GroupFactor f;
      f.is_gl = true;
      f.rank = n;
      spec.factors.push_back(f);
    } else {
      fail("expected SC( or GL(");
    }
    if (i == text.size()) break;
    expect('*');
  }
  if (spec.factors.empty()) fail("empty spec");
  return spec;
}

} // namespace kkit
