#include "doctest.h"

#include <map>

#include "error.hpp"
#include "grammar.hpp"
#include "random.hpp"
#include "ring_element.hpp"

using namespace geuclid;

namespace {

const Domain Q = Domain::rationals();
const Domain F2 = Domain::finite_field(2);
const Domain Z = Domain::integers();

RingElement q(const char* s) { return parse_element(s, Q); }
RingElement f2(const char* s) { return parse_element(s, F2); }

// Reference convolution through an ordered map, independent of the sorted
// merge used by the library.
std::map<std::string, mpq_class> naive_product(const RingElement& x, const RingElement& y) {
  std::map<std::string, mpq_class> acc;
  for (const auto& [u, a] : x.terms()) {
    for (const auto& [v, b] : y.terms()) acc[(u * v).to_string()] += a.rational() * b.rational();
  }
  for (auto it = acc.begin(); it != acc.end();) it = (it->second == 0) ? acc.erase(it) : std::next(it);
  return acc;
}

std::map<std::string, mpq_class> as_map(const RingElement& x) {
  std::map<std::string, mpq_class> m;
  for (const auto& [w, c] : x.terms()) m[w.to_string()] = c.rational();
  return m;
}

}  // namespace

TEST_CASE("ring addition") {
  CHECK((q("1+a") + q("-1-a")).is_zero());
  CHECK(q("1+a") + q("b") == q("1+a+b"));
  CHECK((f2("1+a") + f2("1+a")).is_zero());
  CHECK_THROWS_AS(q("1") + f2("1"), Error);
}

TEST_CASE("ring multiplication") {
  CHECK(q("1+a") * q("1+b") == q("1+a+b+ab"));
  CHECK(q("1+b") * q("1+a") == q("1+b+a+ba"));
  CHECK((q("1+a") * q("0")).is_zero());
  CHECK(q("a") * q("A") == q("1"));
}

TEST_CASE("multiplication matches a reference convolution") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const auto x = random_element(rng, Q, 2, 5, 3);
    const auto y = random_element(rng, Q, 2, 5, 3);
    CHECK(as_map(x * y) == naive_product(x, y));
  }
}

TEST_CASE("measure on the tree") {
  TreeOracle tree(2);
  const auto m1 = measure(q("1+a"), tree);
  CHECK(m1.abs == Extended(Length(1)));
  CHECK(m1.diam == Extended(Length(1)));
  const auto m2 = measure(q("b+ba"), tree);
  CHECK(m2.abs == Extended(Length(2)));
  CHECK(m2.diam == Extended(Length(1)));
  const auto m0 = measure(q("0"), tree);
  CHECK_FALSE(m0.abs.is_finite());
  CHECK_FALSE(m0.diam.is_finite());
  CHECK(m0.abs < Extended(Length(-1000)));
}

TEST_CASE("measure refuses uncertified supports") {
  auto ball = build_cayley_ball(2, {}, 4);
  CHECK_NOTHROW(measure(q("1+ab"), *ball));
  CHECK_THROWS_AS(measure(q("1+aba"), *ball), Error);
}

TEST_CASE("trivial units") {
  const auto u = is_unit(q("3*ab"));
  REQUIRE(u.has_value());
  CHECK(u->first == Scalar(Q, 3L));
  CHECK(u->second == parse_word("ab"));
  CHECK_FALSE(is_unit(q("1+a")).has_value());
  CHECK_FALSE(is_unit(q("0")).has_value());
  CHECK_THROWS_AS(is_unit(parse_element("1", Z)), Error);
}

TEST_CASE("color keys") {
  const auto k1 = color_key(q("b+ba"));
  CHECK(k1.representative == q("1+a"));
  CHECK(k1.translator == parse_word("b"));
  CHECK(k1.scale == Scalar(Q, 1L));

  const auto k2 = color_key(q("5+5*a"));
  CHECK(k2.representative == q("1+a"));
  CHECK(k2.scale == Scalar(Q, 5L));

  CHECK(color_key(q("a")).representative == q("1"));
  CHECK_THROWS_AS(color_key(q("0")), Error);

  // 1+a and A(1+a) = 1+A share a color.
  CHECK(color_key(q("1+a")).representative == color_key(q("1+A")).representative);
  CHECK_FALSE(color_key(q("1+a")).representative == color_key(q("1+b")).representative);
}

TEST_CASE("color key is invariant under trivial units and reconstructs the element") {
  Rng rng(8);
  for (const Domain d : {Q, Domain::finite_field(5)}) {
    for (int t = 0; t < 200; ++t) {
      const auto x = random_element(rng, d, 2, 5, 3);
      const auto lambda = random_nonzero_scalar(rng, d);
      const auto g = random_word_up_to(rng, 2, 3);
      const auto y = x.translated(g).scaled(lambda);
      const auto kx = color_key(x);
      const auto ky = color_key(y);
      CHECK(kx.representative == ky.representative);
      CHECK(kx.representative.coefficient(Word{}).is_one());
      CHECK(kx.representative.translated(kx.translator).scaled(kx.scale) == x);
      // Different colors: perturb one coefficient.
      const auto z = x + RingElement::monomial(Scalar::one(d), random_word(rng, 2, 4));
      if (!z.is_zero() && z.size() != x.size()) CHECK_FALSE(color_key(z).representative == kx.representative);
    }
  }
}

TEST_CASE("filtration laws and translation invariance of diameter") {
  TreeOracle tree(2);
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto x = random_element(rng, Q, 2, 5, 3);
    const auto y = random_element(rng, Q, 2, 5, 3);
    const auto ax = abs_value(x, tree);
    const auto ay = abs_value(y, tree);
    CHECK(abs_value(x - y, tree) <= std::max(ax, ay));
    CHECK(abs_value(x * y, tree) <= Extended(ax.value() + ay.value()));
    const auto g = random_word_up_to(rng, 2, 4);
    CHECK(diam(x.translated(g), tree) == diam(x, tree));
  }
}

TEST_CASE("word length is additive on the positive monoid") {
  TreeOracle tree(2);
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    std::vector<Term> a;
    std::vector<Term> b;
    for (int k = 0; k < 4; ++k) {
      // Positive words: letters a, b only.
      std::vector<Letter> la(rng.below(4), 1);
      for (auto& l : la) l = static_cast<Letter>(1 + rng.below(2));
      std::vector<Letter> lb(rng.below(4), 1);
      for (auto& l : lb) l = static_cast<Letter>(1 + rng.below(2));
      a.emplace_back(Word::reduce(la), Scalar(Q, 1L));
      b.emplace_back(Word::reduce(lb), Scalar(Q, 2L));
    }
    const auto x = RingElement::from_terms(Q, a);
    const auto y = RingElement::from_terms(Q, b);
    CHECK(abs_value(x * y, tree) == Extended(abs_value(x, tree).value() + abs_value(y, tree).value()));
  }
}

TEST_CASE("no zero divisors on random F2 products") {
  Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    const auto x = random_element(rng, F2, 2, 8, 3);
    const auto y = random_element(rng, F2, 2, 8, 3);
    CHECK_FALSE((x * y).is_zero());
  }
}

TEST_CASE("element grammar") {
  CHECK(q("1+a+b+ba").size() == 4);
  const auto e = q("2/3*ab - A");
  CHECK(e.coefficient(parse_word("ab")) == Scalar(Q, mpq_class(2, 3)));
  CHECK(e.coefficient(parse_word("A")) == Scalar(Q, -1L));
  CHECK(e.to_string() == "-A+2/3*ab");
  try {
    (void)q("1+");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.offset() == 2);
  }
  CHECK_THROWS_AS(parse_element("1/2*a", F2), ParseError);
  CHECK(parse_element("1/2*a", Domain::finite_field(5)).to_string() == "3*a");
  CHECK_THROWS_AS(parse_element("1/2", Z), ParseError);
  CHECK_THROWS_AS(parse_element("2a", Q), ParseError);
  CHECK_THROWS_AS(parse_element("c", Q, 2), ParseError);
  CHECK(q("0").is_zero());
  CHECK(q("a-a").to_string() == "0");
}

TEST_CASE("canonical serialization round-trips") {
  CHECK(q("ba+b+a+1").to_string() == "1+a+b+ba");
  CHECK(q("-1-a").to_string() == "-1-a");
  CHECK(parse_element("-1-a", F2).to_string() == "1+a");
  CHECK(parse_element("4*a+3", Domain::finite_field(5)).to_string() == "3+4*a");
  Rng rng(29);
  for (const Domain d : {Q, F2, Z, Domain::finite_field(7)}) {
    for (int t = 0; t < 100; ++t) {
      const auto x = random_element(rng, d, 3, 6, 3);
      CHECK(parse_element(x.to_string(), d) == x);
    }
  }
  const RingVector v{q("1+a"), q("0"), q("-2*b")};
  CHECK(to_string(v) == "(1+a; 0; -2*b)");
  CHECK(parse_vector(to_string(v), Q) == v);
}

TEST_CASE("element and vector lists") {
  const auto xs = parse_element_list("1+a, 1+a+b+ba\n b", Q);
  REQUIRE(xs.size() == 3);
  CHECK(xs[1] == q("1+a+b+ba"));
  CHECK(xs[2] == q("b"));
  const auto vs = parse_vector_list("(1+a; 0)\n(0; 1+b)", Q);
  REQUIRE(vs.size() == 2);
  CHECK(vs[1][1] == q("1+b"));
}

TEST_CASE("mod p reduction is a ring homomorphism") {
  CHECK(mod_p_reduce(parse_element("2+2*a", Z), 2).is_zero());
  CHECK(mod_p_reduce(parse_element("3+a", Z), 2) == f2("1+a"));
  CHECK_THROWS_AS(mod_p_reduce(parse_element("3+a", Z), 4), Error);
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_element(rng, Z, 2, 4, 2);
    const auto y = random_element(rng, Z, 2, 4, 2);
    for (std::uint32_t p : {2U, 3U, 5U}) {
      CHECK(mod_p_reduce(x * y, p) == mod_p_reduce(x, p) * mod_p_reduce(y, p));
      CHECK(mod_p_reduce(x + y, p) == mod_p_reduce(x, p) + mod_p_reduce(y, p));
      const auto px = x.scaled(Scalar(Z, static_cast<long>(p)));
      CHECK(mod_p_reduce(px + y, p) == mod_p_reduce(y, p));
    }
  }
}
