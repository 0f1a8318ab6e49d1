// Batch verification runner.
//
//   verify [--suite NAME]... [--mode exact|float] [--n-max N] [--tolerance T]
//          [--seed S] [--format json|md] [--reproducible]
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage error.

#include <iostream>

#include <CLI11.hpp>

#include "a3/verify/suites.hpp"

int main(int argc, char** argv) {
  using namespace a3::verify;
  CLI::App app{"Exact verification of the second-order deformation theory of the associative A3"};
  RunConfig config;
  std::string mode = "exact", format = "json";
  app.add_option("--suite", config.suites, "Suite to run (repeatable)")
      ->check(CLI::IsMember(suite_names()));
  app.add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--n-max", config.n_max, "Kernel truncation level (at least 6)")->capture_default_str();
  app.add_option("--tolerance", config.tolerance, "Threshold for float cross-checks")->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}));
  app.add_flag("--reproducible", config.reproducible, "Zero all elapsed times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    config.mode = parse_mode(mode);
    const Report report = run(config);
    std::cout << (format == "md" ? report_markdown(report) : report_json(report));
    return report.exit_code();
  } catch (const UsageError& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  }
}
