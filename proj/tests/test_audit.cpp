#include "doctest.h"

#include "audit.hpp"
#include "error.hpp"

using namespace geuclid;

namespace {

void require_clean(const AuditReport& r) {
  for (const auto& t : r.invariants) {
    INFO(t.name, " ", (t.counterexamples.empty() ? std::string() : t.counterexamples.front()));
    CHECK(t.failures == 0);
    CHECK(t.passes + t.skipped == t.trials);
  }
}

}  // namespace

TEST_CASE("audit on the tree") {
  TreeOracle tree(2);
  const auto r = audit_lemmas(tree, {60, 7, 1});
  CHECK(r.invariants.size() == audit_invariant_names().size());
  CHECK(r.delta == Length(0));
  require_clean(r);
  // Trees meet every hypothesis of the point-set lemmas.
  for (const auto& t : r.invariants) {
    if (t.name == "center-vs-midpoint" || t.name == "free-action-on-finite-sets") CHECK(t.skipped == 0);
  }
}

TEST_CASE("audit on a Cayley ball") {
  auto ball = build_cayley_ball(2, {Word{1, 2}}, 6);
  const auto r = audit_lemmas(*ball, {20, 3, 2});
  CHECK(r.delta == Length(1));
  require_clean(r);
}

TEST_CASE("audit is independent of thread count") {
  TreeOracle tree(2);
  const auto a = audit_lemmas(tree, {25, 99, 1});
  const auto b = audit_lemmas(tree, {25, 99, 4});
  REQUIRE(a.invariants.size() == b.invariants.size());
  for (std::size_t i = 0; i < a.invariants.size(); ++i) {
    CHECK(a.invariants[i].passes == b.invariants[i].passes);
    CHECK(a.invariants[i].skipped == b.invariants[i].skipped);
  }
}

TEST_CASE("audit needs trials") {
  TreeOracle tree(1);
  CHECK_THROWS_AS(audit_lemmas(tree, {0, 1, 1}), Error);
}
