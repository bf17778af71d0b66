#include "kkit/report.hpp"
#include "kkit/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

std::vector<std::uint64_t> parse_primes(const std::string& list) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string::npos) comma = list.size();
    out.push_back(std::stoull(list.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

void write_or_print(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << path << " for writing\n";
    std::exit(2);
  }
  out << payload;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification suites for integral Kostant slices and universal centralizers"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "run a verification suite");
  std::vector<std::string> groups;
  check->add_option("--group", groups, "group spec, e.g. SC(A2) or SC(A2)*GL(3)")
      ->required()
      ->take_all();
  std::string primes = "0,2,3,5,7,11,31";
  check->add_option("--primes", primes, "comma-separated characteristics (0 = rationals)");
  std::vector<std::string> suites = {"all"};
  check->add_option("--suite", suites,
                    "springer|conditions|slice|quotient|centralizer|groth|waction|all")
      ->take_all();
  std::uint64_t seed = 0;
  check->add_option("--seed", seed, "64-bit sampling seed");
  std::size_t samples = 100;
  check->add_option("--samples", samples, "samples per sampled audit");
  unsigned degree = 6;
  check->add_option("--degree", degree, "truncation degree for the twisted module");
  std::size_t groth_samples = 50;
  check->add_option("--groth-samples", groth_samples, "split regular samples per fiber audit");
  std::size_t waction_rank_cap = 2;
  check->add_option("--waction-rank-cap", waction_rank_cap,
                    "rank envelope for the twisted-action audit");
  std::string json_path;
  check->add_option("--json", json_path, "write the JSON report here (default: stdout)");
  bool timings = false;
  check->add_flag("--timings", timings,
                  "include wall-clock timings (breaks byte-identical reports)");
  std::size_t threads = 0;
  check->add_option("--threads", threads, "worker threads (default: KKIT_THREADS or hardware)");

  // tables
  auto* tables = app.add_subcommand("tables", "emit torsion tables for group specs");
  std::vector<std::string> table_groups;
  tables
      ->add_option("--group", table_groups,
                   "group specs (default: the standard verification matrix)")
      ->take_all();
  std::string out_path;
  tables->add_option("--out", out_path, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      kkit::SuiteConfig cfg;
      cfg.groups = groups;
      cfg.primes = parse_primes(primes);
      cfg.suites = suites;
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.degree = degree;
      cfg.groth_samples = groth_samples;
      cfg.waction_rank_cap = waction_rank_cap;
      cfg.emit_timings = timings;
      cfg.threads = threads;
      kkit::VerificationReport report = kkit::run_suite(cfg);
      write_or_print(json_path, kkit::to_json(report));
      std::cerr << "pass " << report.count(kkit::CheckStatus::Pass) << ", fail "
                << report.count(kkit::CheckStatus::Fail) << ", not-applicable "
                << report.count(kkit::CheckStatus::NotApplicable) << ", expected-fail "
                << report.count(kkit::CheckStatus::ExpectedFail) << "\n";
      return report.has_unexpected_failures() ? 1 : 0;
    }
    if (*tables) {
      if (table_groups.empty())
        table_groups = {"SC(A1)", "SC(A2)", "SC(A3)", "SC(A4)", "SC(B2)", "SC(B3)",
                        "SC(C3)", "SC(D4)", "SC(G2)", "SC(F4)", "GL(2)",  "GL(3)",
                        "GL(4)"};
      write_or_print(out_path, kkit::emit_torsion_tables(table_groups));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
