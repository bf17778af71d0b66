#pragma once

#include "kkit/report.hpp"

#include <string>
#include <vector>

namespace kkit {

inline constexpr const char* kSuiteNames[] = {
    "springer", "conditions", "slice", "quotient", "centralizer", "groth", "waction", "all"};

// Runs the requested check matrix. Individual check failures never abort
// the suite; every requested check is either executed or reported as
// not-applicable with the violated precondition named.
VerificationReport run_suite(const SuiteConfig& config);

// Per-group torsion tables of all the graded ad(e) components, the
// derived inverted integer, and the comparison with the configured
// very-good product. Returns a JSON document.
std::string emit_torsion_tables(const std::vector<std::string>& specs);

std::string kkit_version();

} // namespace kkit
