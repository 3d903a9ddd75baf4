#pragma once

// Closed forms checked against the dense oracle, as a list of named checks.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dickeent::verify {

struct Options {
  int max_n = 8;               // largest n for 2^n-dimensional checks (at most 8)
  int two_site_max_n = 50;     // largest n for 4x4 two-site checks
  std::uint64_t seed = 1;
  int threads = 1;
  int separable_samples = 1000;    // per (n, k)
  int variational_samples = 10000;
  int numeric_restarts = 32;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  long cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;  // first failing case, or why the check was skipped
  double seconds = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

std::vector<std::string> check_names();

/// Runs every check (or only those in `only`, if non-empty).
Report run(const Options& opts, const std::vector<std::string>& only = {});

/// One line per check, then a summary line. Timings only when requested.
void write_report(std::ostream& os, const Report& r, bool timing);

}  // namespace dickeent::verify
