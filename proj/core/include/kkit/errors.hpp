#pragma once

#include <stdexcept>
#include <string>

namespace kkit {

struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedType : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WeylTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructureConstantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyDegree : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegralDividedPower : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoIntegralComplement : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConditionViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BruteForceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace kkit
