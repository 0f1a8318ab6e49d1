#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace a3::verify {

inline constexpr const char* kVersion = "1.0.0";

enum class Mode { exact, floating };

inline std::string to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw std::invalid_argument("unknown mode '" + s + "' (expected exact or float)");
}

// Bad command line or configuration; maps to exit status 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Mode mode = Mode::exact;
  int n_max = 10;
  double tolerance = 1e-10;
  std::uint64_t seed = 20260101;
  std::vector<std::string> suites;  // empty selects all
  bool reproducible = false;

  void validate() const {
    if (n_max < 6)
      throw UsageError("--n-max " + std::to_string(n_max) +
                       " refused: the kernel has components at level 6, so the truncation must be at least 6");
    if (!(tolerance > 0)) throw UsageError("--tolerance must be positive");
  }
};

enum class Status { pass, fail, skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "skipped";
  }
}

struct CheckResult {
  std::string id;
  std::string suite;
  Status status = Status::skipped;
  std::string residual = "0";
  double elapsed_ms = 0;
  std::string citation;
  std::string detail;
};

struct Summary {
  int passed = 0, failed = 0, skipped = 0;
};

struct Report {
  RunConfig config;
  std::vector<CheckResult> checks;

  Summary summary() const {
    Summary s;
    for (const auto& c : checks) {
      if (c.status == Status::pass) ++s.passed;
      else if (c.status == Status::fail) ++s.failed;
      else ++s.skipped;
    }
    return s;
  }

  int exit_code() const { return summary().failed == 0 ? 0 : 1; }
};

inline std::string format_decimal(double x) {
  if (x == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline std::string format_elapsed(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

inline std::string report_json(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json suites = ordered_json::array();
  for (const auto& s : r.config.suites) suites.push_back(s);
  ordered_json config = {{"mode", to_string(r.config.mode)},
                         {"n_max", r.config.n_max},
                         {"tolerance", r.config.tolerance},
                         {"seed", r.config.seed},
                         {"suites", suites},
                         {"reproducible", r.config.reproducible}};
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    // keep elapsed a plain number with fixed precision
    checks.push_back({{"id", c.id},
                      {"suite", c.suite},
                      {"status", to_string(c.status)},
                      {"residual", c.residual},
                      {"elapsed", ordered_json::parse(format_elapsed(c.elapsed_ms))},
                      {"citation", c.citation},
                      {"detail", c.detail}});
  }
  const Summary s = r.summary();
  ordered_json out = {{"version", kVersion},
                      {"config", config},
                      {"checks", checks},
                      {"summary", {{"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}}}};
  return out.dump(2) + "\n";
}

namespace detail {

inline std::string escape_cell(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += "\\|";
    else if (ch == '\n') out += ' ';
    else out += ch;
  }
  return out;
}

}  // namespace detail

inline std::string report_markdown(const Report& r) {
  std::ostringstream os;
  const Summary s = r.summary();
  os << "# Verification report\n\n";
  os << "version " << kVersion << ", mode " << to_string(r.config.mode) << ", n_max " << r.config.n_max
     << ", tolerance " << r.config.tolerance << ", seed " << r.config.seed << "\n\n";
  std::string current;
  bool open = false;
  for (const auto& c : r.checks) {
    if (!open || c.suite != current) {
      current = c.suite;
      open = true;
      os << "## " << current << "\n\n";
      os << "| check | status | residual | elapsed (ms) | citation | detail |\n";
      os << "|---|---|---|---|---|---|\n";
    }
    os << "| " << c.id << " | " << to_string(c.status) << " | " << c.residual << " | "
       << format_elapsed(c.elapsed_ms) << " | [" << detail::escape_cell(c.citation) << "] | "
       << detail::escape_cell(c.detail) << " |\n";
    auto next = &c + 1;
    if (next == r.checks.data() + r.checks.size() || next->suite != current) os << "\n";
  }
  os << "**summary**: " << s.passed << " passed, " << s.failed << " failed, " << s.skipped << " skipped\n";
  return os.str();
}

}  // namespace a3::verify
