#include "kkit/report.hpp"

#include <json.hpp>

namespace kkit {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::ExpectedFail: return "expected-fail";
  }
  return "?";
}

bool VerificationReport::has_unexpected_failures() const {
  for (const CheckResult& c : checks)
    if (c.status == CheckStatus::Fail) return true;
  return false;
}

std::size_t VerificationReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const CheckResult& c : checks)
    if (c.status == s) ++n;
  return n;
}

std::string to_json(const VerificationReport& report) {
  using json = nlohmann::ordered_json;
  json root;
  root["schema"] = "kkit-report/1";
  root["version"] = report.version;
  json cfg;
  cfg["groups"] = report.config.groups;
  cfg["primes"] = report.config.primes;
  cfg["suites"] = report.config.suites;
  cfg["seed"] = report.config.seed;
  cfg["samples"] = report.config.samples;
  cfg["degree"] = report.config.degree;
  cfg["groth_samples"] = report.config.groth_samples;
  cfg["weyl_cap"] = report.config.weyl_cap;
  cfg["waction_rank_cap"] = report.config.waction_rank_cap;
  root["config"] = cfg;

  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    json e;
    e["group"] = c.group;
    if (c.prime >= 0)
      e["prime"] = c.prime;
    else
      e["prime"] = nullptr;
    e["check"] = c.check;
    e["statement"] = c.statement;
    e["status"] = to_string(c.status);
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!c.witness.empty()) {
      json w;
      for (const auto& [k, v] : c.witness) w[k] = v;
      e["witness"] = w;
    }
    if (report.config.emit_timings) e["time_ms"] = c.time_ms;
    checks.push_back(std::move(e));
  }
  root["checks"] = std::move(checks);

  json summary;
  summary["pass"] = report.count(CheckStatus::Pass);
  summary["fail"] = report.count(CheckStatus::Fail);
  summary["not_applicable"] = report.count(CheckStatus::NotApplicable);
  summary["expected_fail"] = report.count(CheckStatus::ExpectedFail);
  root["summary"] = std::move(summary);
  return root.dump(2) + "\n";
}

} // namespace kkit
