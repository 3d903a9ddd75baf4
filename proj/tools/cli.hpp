#pragma once

// dickeent command-line front end: table output, sweep grids, energy files.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dickeent::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "A:B:lin[:step]" (A, A+step, ..., <= B) or "A:B:log[:factor]" (A, A*factor, ..., then B).
/// lin step defaults to 1, log factor to 2. Rounded, deduplicated, ascending.
std::vector<std::int64_t> parse_int_sweep(const std::string& text);

/// Same grammar over reals; the log form needs A > 0.
std::vector<double> parse_real_sweep(const std::string& text);

/// Two-column CSV "k,E_k" covering every level 0..n once. '#' comments, blank lines and a
/// non-numeric first line (header) are skipped. Errors name the line.
std::vector<double> parse_energy_csv(std::istream& in, const std::string& source);

enum class Format { kCsv, kJsonl };

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

/// %.12g with inf/-inf/nan spelled out.
std::string format_number(double x);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

class TableWriter {
 public:
  TableWriter(std::ostream& os, Format f, std::vector<std::string> columns);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& os_;
  Format format_;
  std::vector<std::string> columns_;
};

/// Parses argv and runs one subcommand. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dickeent::cli
