#include "doctest.h"

#include <unordered_map>

#include "error.hpp"
#include "grammar.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "reduction.hpp"

using namespace geuclid;

namespace {

const Domain Q = Domain::rationals();
const Domain F2 = Domain::finite_field(2);
const Domain F5 = Domain::finite_field(5);

RingElement q(const char* s) { return parse_element(s, Q); }
RingElement f2(const char* s) { return parse_element(s, F2); }

// y in the left ideal generated by xs, with coefficient supports in the R-ball.
bool in_ideal(const RingElement& y, const std::vector<RingElement>& xs, int R) {
  std::unordered_map<Word, std::size_t, WordHash> rows;
  auto row = [&](const Word& w) { return rows.try_emplace(w, rows.size()).first->second; };
  std::vector<SparseColumn> cols;
  for (const auto& x : xs) {
    for (const auto& g : words_up_to(2, R)) {
      SparseColumn c;
      const RingElement gx = x.translated(g);
      for (const auto& [w, s] : gx.terms()) c.emplace_back(row(w), s);
      cols.push_back(std::move(c));
    }
  }
  SparseColumn target;
  for (const auto& [w, s] : y.terms()) target.emplace_back(row(w), s);
  return solve_field(y.domain(), rows.size(), cols, target).has_value();
}

// Random exact relation: alpha and xi_1..xi_{n-1} random, xi_n fixed by the
// relation with alpha_n a trivial unit.
void random_relation(Rng& rng, Domain d, int n, std::vector<RingElement>& xi, std::vector<RingElement>& alpha) {
  xi.clear();
  alpha.clear();
  RingElement acc(d);
  for (int i = 0; i + 1 < n; ++i) {
    xi.push_back(random_element(rng, d, 2, 3, 2));
    alpha.push_back(random_element(rng, d, 2, 3, 2));
    acc += alpha.back() * xi.back();
  }
  const Scalar lambda = random_nonzero_scalar(rng, d);
  const Word g = random_word_up_to(rng, 2, 1);
  alpha.push_back(RingElement::monomial(lambda, g));
  xi.push_back(-(acc.translated(g.inverse()).scaled(lambda.inverse())));
}

}  // namespace

TEST_CASE("reduction constants") {
  for (int n = 0; n <= 8; ++n) {
    const auto c = ReductionConstants::make(Length(1, 2), n);
    CHECK(c.at(0) == Length(0));
    CHECK(c.delta_n() == Length(n * n + 10 * n, 2));
  }
  CHECK(ReductionConstants::make(Length(1), 2).at(1) == Length(11));
}

TEST_CASE("dependence search examples") {
  const std::vector<RingElement> worked{q("1+a"), q("1+a+b+ba")};
  CHECK_FALSE(find_dependence(worked, 0, 2).has_value());
  const auto dep = find_dependence(worked, 1, 2);
  REQUIRE(dep.has_value());
  // Normalized so the first nonzero coefficient is 1.
  CHECK((*dep)[0] == q("1+b"));
  CHECK((*dep)[1] == q("-1"));

  const std::vector<RingElement> twice{q("1+a"), q("1+a")};
  const auto d2 = find_dependence(twice, 0, 2);
  REQUIRE(d2.has_value());
  CHECK((*d2)[0] == q("1"));
  CHECK((*d2)[1] == q("-1"));

  const std::vector<RingElement> aug{q("1+a"), q("1+b")};
  for (int R = 0; R <= 4; ++R) CHECK_FALSE(find_dependence(aug, R, 2).has_value());

  CHECK_THROWS_AS(find_dependence(std::vector<RingElement>{parse_element("1", Domain::integers())}, 1, 2), Error);
}

TEST_CASE("no F2 dependence of 1+a, 1+b with supports of length 1, by enumeration") {
  const std::vector<RingElement> xs{f2("1+a"), f2("1+b")};
  const auto ball = words_up_to(2, 1);
  const std::size_t k = ball.size();
  bool any = false;
  for (std::uint32_t mask = 1; mask < (1U << (2 * k)); ++mask) {
    std::vector<Term> a0;
    std::vector<Term> a1;
    for (std::size_t t = 0; t < k; ++t) {
      if (mask & (1U << t)) a0.emplace_back(ball[t], Scalar::one(F2));
      if (mask & (1U << (k + t))) a1.emplace_back(ball[t], Scalar::one(F2));
    }
    const auto s = RingElement::from_terms(F2, a0) * xs[0] + RingElement::from_terms(F2, a1) * xs[1];
    any = any || s.is_zero();
  }
  CHECK_FALSE(any);
  CHECK_FALSE(find_dependence(xs, 1, 2).has_value());
}

TEST_CASE("found dependences are relations inside the search ball") {
  Rng rng(51);
  for (int t = 0; t < 40; ++t) {
    std::vector<RingElement> xi;
    std::vector<RingElement> alpha;
    random_relation(rng, F5, 3, xi, alpha);
    const auto dep = find_dependence(xi, 2, 2);
    REQUIRE(dep.has_value());
    CHECK(dot(*dep, xi).is_zero());
    bool nonzero = false;
    for (const auto& a : *dep) {
      nonzero = nonzero || !a.is_zero();
      CHECK(a.word_length() <= Extended(Length(2)));
    }
    CHECK(nonzero);
  }
}

TEST_CASE("worked reduction step on the tree") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  const std::vector<RingElement> xi{q("1+a"), -(q("1+b") * q("1+a"))};
  const std::vector<RingElement> alpha{q("1+b"), q("1")};
  const auto step = reduce_step(xi, alpha, ctx);
  CHECK(step.path == StepPath::Tree);
  CHECK(step.target == 1);
  CHECK(step.family.members[step.v_star].element == q("-1-a-b-ba"));
  REQUIRE(step.S.size() == 1);
  CHECK(step.family.members[step.S[0]].element == q("b+ba"));
  CHECK(step.result == q("-1-a"));
  CHECK(step.diam_before == Extended(Length(3)));
  CHECK(step.diam_after == Extended(Length(1)));
  CHECK(step.beta[0] == q("b"));
  CHECK(step.beta[1].is_zero());
  CHECK(step.log.to_string() == "E 0 1 b\n");

  const std::vector<RingElement> xf{f2("1+a"), f2("1+a+b+ba")};
  const std::vector<RingElement> af{f2("1+b"), f2("1")};
  CHECK(reduce_step(xf, af, ctx).result == f2("1+a"));
}

TEST_CASE("general path on the tree agrees with the tree path") {
  TreeOracle tree(2);
  ReductionOptions opts;
  opts.force_general = true;
  ReductionContext ctx(tree, opts);
  const std::vector<RingElement> xi{q("1+a"), -(q("1+b") * q("1+a"))};
  const std::vector<RingElement> alpha{q("1+b"), q("1")};
  const auto step = reduce_step(xi, alpha, ctx);
  CHECK(step.path == StepPath::General);
  CHECK(step.result == q("-1-a"));

  Rng rng(57);
  ReductionContext plain(tree);
  for (int t = 0; t < 100; ++t) {
    std::vector<RingElement> x;
    std::vector<RingElement> a;
    random_relation(rng, Q, 2 + static_cast<int>(rng.below(2)), x, a);
    if (std::any_of(x.begin(), x.end(), [](const RingElement& e) { return e.is_zero(); })) continue;
    const auto s = reduce_step(x, a, ctx);
    if (s.path == StepPath::SameColor) continue;
    for (const auto& line : s.diagnostics) CHECK(line.rfind("descending", 0) == 0);
    CHECK(s.diam_after < s.diam_before);
  }
}

TEST_CASE("same-color cancellation and unimodular step") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  const auto x1 = q("1+ab");
  const auto x2 = x1.translated(parse_word("B")).scaled(Scalar(Q, 3L));
  const std::vector<RingElement> xi{x1, x2};
  const std::vector<RingElement> alpha{q("3*B"), q("-1")};
  const auto s = reduce_step(xi, alpha, ctx);
  CHECK(s.path == StepPath::SameColor);
  CHECK(s.target == 1);
  CHECK(s.result.is_zero());
  CHECK_FALSE(s.diam_after.is_finite());

  const std::vector<RingElement> u{q("1+a"), q("a")};
  const std::vector<RingElement> ua{q("1"), q("-1")};
  const auto step = reduce_step(u, ua, ctx);
  CHECK(step.target == 0);
  CHECK(step.result == q("1"));
  CHECK(step.diam_before == Extended(Length(1)));
  CHECK(step.diam_after == Extended(Length(0)));
  CHECK(step.log.to_string() == "E 1 0 -1\n");
}

TEST_CASE("reduce_step refuses non-relations") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  const std::vector<RingElement> xi{q("1+a"), q("b")};
  const std::vector<RingElement> alpha{q("1"), q("1")};
  try {
    (void)reduce_step(xi, alpha, ctx);
    FAIL("expected a hypothesis failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisNotMet);
  }
}

TEST_CASE("reduction steps on random tree relations") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  Rng rng(61);
  for (const Domain d : {Q, F2, F5}) {
    for (int t = 0; t < 150; ++t) {
      std::vector<RingElement> xi;
      std::vector<RingElement> alpha;
      random_relation(rng, d, 2 + static_cast<int>(rng.below(3)), xi, alpha);
      if (std::any_of(xi.begin(), xi.end(), [](const RingElement& e) { return e.is_zero(); })) continue;
      const auto step = reduce_step(xi, alpha, ctx);
      CHECK(step.diam_after < step.diam_before);
      std::vector<RingElement> replayed = xi;
      step.log.replay(replayed);
      CHECK(replayed[step.target] == step.result);
      if (step.path == StepPath::SameColor) continue;
      for (auto v : step.S) CHECK(step.family.members[v].color != step.replaced_color);
      // Every beta_i is a sub-sum of alpha_i.
      for (std::size_t i = 0; i < xi.size(); ++i) {
        for (const auto& [w, c] : step.beta[i].terms()) CHECK(alpha[i].coefficient(w) == c);
      }
    }
  }
}

TEST_CASE("zero_coordinate examples") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  const std::vector<RingElement> xi{q("1+a"), q("1+a+b+ba")};
  const std::vector<RingElement> alpha{q("1+b"), q("-1")};
  const auto r = zero_coordinate(xi, alpha, ctx);
  CHECK(r.steps.size() == 2);
  CHECK(r.xi[0] == q("1+a"));
  CHECK(r.xi[1].is_zero());
  CHECK(r.log.to_string() == "E 0 1 -b\nE 0 1 -1\n");
  CHECK(dot(r.alpha, r.xi).is_zero());

  const std::vector<RingElement> single{q("1+a"), q("0")};
  const std::vector<RingElement> sa{q("0"), q("1")};
  CHECK(zero_coordinate(single, sa, ctx).log.empty());

  const std::vector<RingElement> bad{q("1+a"), q("b")};
  CHECK_THROWS_AS(zero_coordinate(bad, alpha, ctx), Error);
}

TEST_CASE("zero_coordinate on random relations") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  Rng rng(67);
  for (const Domain d : {Q, F2, Domain::finite_field(3)}) {
    for (int t = 0; t < 80; ++t) {
      std::vector<RingElement> xi;
      std::vector<RingElement> alpha;
      random_relation(rng, d, 2 + static_cast<int>(rng.below(3)), xi, alpha);
      const auto r = zero_coordinate(xi, alpha, ctx);
      CHECK(std::any_of(r.xi.begin(), r.xi.end(), [](const RingElement& e) { return e.is_zero(); }));
      std::vector<RingElement> replayed = xi;
      r.log.replay(replayed);
      CHECK(replayed == r.xi);
      r.log.replay_inverse(replayed);
      CHECK(replayed == xi);
      CHECK(dot(r.alpha, r.xi).is_zero());
    }
  }
}

TEST_CASE("normalize_unimodular examples") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  const std::vector<RingElement> xi{q("1+a"), q("a")};
  const std::vector<RingElement> alpha{q("1"), q("-1")};
  const auto r = normalize_unimodular(xi, alpha, ctx);
  CHECK(r.lambda == Scalar(Q, 1L));
  CHECK(r.g.is_identity());
  CHECK(r.log.to_string() == "E 1 0 -1\nE 0 1 -a\n");

  const std::vector<RingElement> unit{q("2*ab"), q("0")};
  const std::vector<RingElement> ua{q("1/2*BA"), q("0")};
  const auto u = normalize_unimodular(unit, ua, ctx);
  CHECK(u.log.empty());
  CHECK(u.g == parse_word("ab"));

  const std::vector<RingElement> clear{q("1"), q("1+a+b"), q("B")};
  const std::vector<RingElement> ca{q("1"), q("0"), q("0")};
  const auto c = normalize_unimodular(clear, ca, ctx);
  CHECK(c.log.size() == 2);
  CHECK(c.xi[1].is_zero());
  CHECK(c.xi[2].is_zero());

  CHECK_THROWS_AS(normalize_unimodular(xi, ca, ctx), Error);
}

TEST_CASE("ideal basis examples") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  const std::vector<RingElement> gens{q("1+a"), q("1+a+b+ba")};
  const auto r = ideal_basis(gens, ctx, 6);
  CHECK(r.status == BasisStatus::VerifiedFree);
  CHECK(r.status_string() == "VERIFIED_FREE");
  REQUIRE(r.basis.size() == 1);
  CHECK(r.basis[0] == q("1+a"));
  std::vector<RingElement> slots = gens;
  r.log.replay(slots);
  CHECK(slots == r.final_slots);
  r.log.replay_inverse(slots);
  CHECK(slots == gens);
  // Same ideal, checked by bounded membership both ways.
  for (const auto& g : gens) CHECK(in_ideal(g, r.basis, 2));
  for (const auto& b : r.basis) CHECK(in_ideal(b, gens, 2));

  const std::vector<RingElement> aug{q("1+a"), q("1+b")};
  const auto ind = ideal_basis(aug, ctx, 4);
  CHECK(ind.status_string() == "INDEPENDENT_UP_TO(4)");
  CHECK(ind.basis == aug);
  CHECK(ind.searches.size() == 5);
  for (const auto& s : ind.searches) CHECK_FALSE(s.found);

  const std::vector<RingElement> with_zero{q("0"), q("1+b")};
  const auto z = ideal_basis(with_zero, ctx, 3);
  REQUIRE(z.basis.size() == 1);
  CHECK(z.basis[0] == q("1+b"));
  CHECK(z.status == BasisStatus::VerifiedFree);
}

TEST_CASE("ideal bases of dependent random generators keep the ideal") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_element(rng, F2, 2, 3, 1);
    const auto c1 = random_element(rng, F2, 2, 2, 1);
    const auto c2 = random_element(rng, F2, 2, 2, 1);
    // c1 x and c2 c1 x satisfy a left relation with supports of length 1.
    const std::vector<RingElement> gens{c1 * x, c2 * c1 * x};
    if (gens[0].is_zero() || gens[1].is_zero()) continue;
    const auto r = ideal_basis(gens, ctx, 3);
    CHECK(r.status == BasisStatus::VerifiedFree);
    REQUIRE(r.basis.size() == 1);
    for (const auto& g : gens) CHECK(in_ideal(g, r.basis, 3));
    for (const auto& b : r.basis) CHECK(in_ideal(b, gens, 4));
  }
}

TEST_CASE("submodule basis examples") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  const std::vector<RingVector> split{{q("1+a"), q("0")}, {q("0"), q("1+b")}};
  const auto r = submodule_basis(split, ctx, 3);
  CHECK(r.vector_basis == split);
  CHECK(r.status == BasisStatus::VerifiedFree);

  const RingVector v{q("1+a"), q("b")};
  const std::vector<RingVector> orbit{v, left_mul(q("ab"), v)};
  const auto o = submodule_basis(orbit, ctx, 3);
  REQUIRE(o.vector_basis.size() == 1);
  CHECK(o.vector_basis[0] == v);

  const std::vector<RingVector> zero{{q("0"), q("0")}};
  CHECK(submodule_basis(zero, ctx, 3).vector_basis.empty());

  const std::vector<RingVector> indep{{q("1+a"), q("1")}, {q("1+b"), q("a")}};
  const auto i = submodule_basis(indep, ctx, 2);
  CHECK(i.status_string() == "INDEPENDENT_UP_TO(2)");
  CHECK(i.vector_basis == indep);

  std::vector<RingVector> slots = orbit;
  o.log.replay(slots);
  CHECK(slots == o.final_vector_slots);
}

TEST_CASE("ge_factor examples") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  RingMatrix e = identity_matrix(Q, 2);
  e[0][1] = q("1+a");
  RingMatrix einv = identity_matrix(Q, 2);
  einv[0][1] = q("-1-a");
  const auto r = ge_factor(e, einv, ctx);
  CHECK(r.log.to_string() == "E 1 0 1+a\n");

  RingMatrix dg = identity_matrix(Q, 2);
  dg[0][0] = q("a");
  RingMatrix dinv = identity_matrix(Q, 2);
  dinv[0][0] = q("A");
  CHECK(ge_factor(dg, dinv, ctx).log.to_string() == "D 0 1 a\n");

  CHECK_THROWS_AS(ge_factor(e, e, ctx), Error);
}

TEST_CASE("ge_factor round trip on random products") {
  TreeOracle tree(2);
  ReductionContext ctx(tree);
  Rng rng(73);
  for (const Domain d : {F2, F5, Q}) {
    for (int t = 0; t < 25; ++t) {
      const std::size_t n = 2 + rng.below(2);
      TransformationLog known;
      for (int k = 0; k < 5; ++k) {
        const std::size_t i = rng.below(n);
        std::size_t j = rng.below(n - 1);
        if (j >= i) ++j;
        if (rng.below(4) == 0) {
          known.push(LogOp::diagonal(i, random_nonzero_scalar(rng, d), random_word_up_to(rng, 2, 1)));
        } else {
          RingElement x = random_element(rng, d, 2, 3, 1);
          if (x.is_zero()) x = RingElement::one(d);
          known.push(LogOp::elementary(i, j, x));
        }
      }
      const RingMatrix X = log_product(known, d, n);
      const RingMatrix A = log_product(known.inverse(), d, n);
      REQUIRE(multiply(A, X) == identity_matrix(d, n));
      const auto r = ge_factor(X, A, ctx);
      CHECK(log_product(r.log, d, n) == X);
    }
  }
}

TEST_CASE("coefficient bookkeeping preserves the pairing") {
  Rng rng(79);
  for (int t = 0; t < 100; ++t) {
    std::vector<RingElement> xi;
    std::vector<RingElement> alpha;
    for (int i = 0; i < 3; ++i) {
      xi.push_back(random_element(rng, Q, 2, 3, 2));
      alpha.push_back(random_element(rng, Q, 2, 3, 2));
    }
    TransformationLog log;
    log.push(LogOp::elementary(0, 2, random_element(rng, Q, 2, 2, 1)));
    log.push(LogOp::diagonal(1, Scalar(Q, 3L), parse_word("aB")));
    log.push(LogOp::permute(0, 1));
    const auto before = dot(alpha, xi);
    log.replay(xi);
    transform_coefficients(log, alpha);
    CHECK(dot(alpha, xi) == before);
  }
}
