#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "space.hpp"

namespace geuclid {

struct AuditOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  /// Worker threads; the report does not depend on this.
  unsigned threads = 1;
};

struct InvariantTally {
  std::string name;
  std::string statement;
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::size_t failures = 0;
  /// Trials whose random instance missed the invariant's hypotheses.
  std::size_t skipped = 0;
  /// Shrunk counterexamples of the first few failing trials.
  std::vector<std::string> counterexamples;
};

struct AuditReport {
  std::string oracle;
  Length delta{0};
  Length displacement{0};
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<InvariantTally> invariants;

  [[nodiscard]] std::size_t total_failures() const;
};

/// Names of the registered invariants, in report order.
std::vector<std::string> audit_invariant_names();

/// Runs every registered invariant on `trials` random instances; trial t of
/// invariant k draws from the stream keyed by (seed, k, t).
AuditReport audit_lemmas(const SpaceOracle& oracle, const AuditOptions& options);

}  // namespace geuclid
