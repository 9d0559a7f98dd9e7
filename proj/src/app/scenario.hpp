#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "scalar.hpp"
#include "space.hpp"

namespace geuclid {

struct OracleSpec {
  std::string kind = "tree";  // tree | cayley-ball
  int rank = 2;
  std::vector<Word> extra;
  int radius = 6;
  std::size_t vertex_cap = 200000;

  [[nodiscard]] std::unique_ptr<SpaceOracle> build() const;
};

/// A task and its inputs. Text form, one `key = value` per line:
///
///   task = reduce
///   oracle = tree
///   rank = 2
///   domain = q
///   xi = 1+a, -1-a-b-ba
///   alpha = 1+b, 1
///
/// `#` starts a comment, a trailing `\` continues the value on the next line.
/// Log values separate operations with `;`.
struct Scenario {
  std::string task;
  OracleSpec oracle;
  Domain domain = Domain::rationals();
  std::uint64_t seed = 42;
  int r_max = 6;
  bool unsafe = false;
  std::size_t trials = 100;
  unsigned threads = 1;
  /// Task inputs (xi, alpha, generators, vectors, matrix, inverse, log, slots,
  /// n, group_radius, inverse_replay), kept as text until the task runs.
  std::map<std::string, std::string> inputs;

  /// Canonical text form; parses back to an equal scenario.
  [[nodiscard]] std::string to_text() const;
};

Scenario parse_scenario(std::string_view text);

/// Tasks understood by run_scenario, in help order.
const std::vector<std::string>& scenario_tasks();

struct Report {
  std::string task;
  /// 0 success, 1 error or failed check, 2 bounded search inconclusive.
  int exit_code = 0;
  /// Error code of a failed run, 0 otherwise.
  int error_code = 0;
  std::string text;
  /// Deterministic for a fixed scenario; holds no timings.
  std::string json;
  double seconds = 0;

  /// Text, elapsed time, the `---json---` delimiter and the JSON document.
  [[nodiscard]] std::string render() const;
};

/// Never throws for bad input: errors become exit-code-1 reports.
Report run_scenario(const Scenario& scenario);
Report run_scenario_text(std::string_view text);

}  // namespace geuclid
