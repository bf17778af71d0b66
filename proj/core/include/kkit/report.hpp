#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kkit {

enum class CheckStatus { Pass, Fail, NotApplicable, ExpectedFail };

const char* to_string(CheckStatus s);

struct CheckResult {
  std::string group;
  long prime = -1; // -1 = prime-independent
  std::string check;
  std::string statement; // identifier of the certified statement
  CheckStatus status = CheckStatus::Fail;
  std::string detail;
  std::map<std::string, std::string> witness; // populated on every failure
  double time_ms = 0.0;                       // serialized only on request
};

struct SuiteConfig {
  std::vector<std::string> groups;
  std::vector<std::uint64_t> primes = {0, 2, 3, 5, 7, 11, 31};
  std::vector<std::string> suites = {"all"};
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  unsigned degree = 6;        // truncation degree for the twisted module
  std::size_t groth_samples = 50;
  std::uint64_t weyl_cap = 51840;
  std::size_t waction_rank_cap = 2; // braid-word envelope for the twisted action
  bool emit_timings = false;  // timings break byte-identical output; opt-in
  std::size_t threads = 0;    // 0 = hardware/KKIT_THREADS
};

struct VerificationReport {
  std::string version;
  SuiteConfig config;
  std::vector<CheckResult> checks;

  bool has_unexpected_failures() const;
  std::size_t count(CheckStatus s) const;
};

// Deterministic serialization: byte-identical for identical
// (config, seed, version) as long as timings are not requested.
std::string to_json(const VerificationReport& report);

} // namespace kkit
