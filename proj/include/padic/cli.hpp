#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padic/instance.hpp"

namespace padic {

/// Syntax errors carry a 1-based position.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Line-oriented constraint language:
///
///   vars x y z
///   eq 2 x - 1/3 y = 5          # coefficients optional, default 1
///   val 3 : v(x) >= -2          # >=, <=, ==, !=, <, >
///   ord 1/2 x + y < 3           # < or <=
Instance parse_instance(std::string_view text);

/// Inverse of parse_instance up to whitespace and coefficient spelling.
std::string serialize_instance(const Instance& inst);

/// {"status", "fragment", "witness"?, "stats"} as one JSON document.
std::string verdict_to_json(const Instance& inst, const Verdict& v, double time_ms);

/// Reads the "witness" object of a JSON document (or the object itself).
Witness witness_from_json(const Instance& inst, std::string_view text);

/// Fragment per prime from the constraint kinds as written (no normalization).
std::vector<std::pair<Prime, Fragment>> fragments_of(const Instance& inst);

/// "x = 3@-2 + 1@0" lines, one per variable.
std::string render_witness(const Instance& inst, const Witness& w);

enum ExitCode : int { kSat = 0, kUnsat = 1, kUnknown = 2, kUsage = 3, kInvariant = 4 };

/// Full command-line front end; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padic
