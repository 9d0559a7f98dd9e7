#include "doctest.h"

#include "error.hpp"
#include "extremal_graph.hpp"
#include "grammar.hpp"
#include "random.hpp"

using namespace geuclid;

namespace {

const Domain Q = Domain::rationals();
RingElement q(const char* s) { return parse_element(s, Q); }

}  // namespace

TEST_CASE("expanding a relation") {
  const std::vector<RingElement> xi{q("1+a")};
  const std::vector<RingElement> alpha{q("1+b")};
  const auto f = expand_relation(xi, alpha);
  REQUIRE(f.size() == 2);
  CHECK(f.members[0].element == q("1+a"));
  CHECK(f.members[1].element == q("b+ba"));
  CHECK(f.members[0].color == f.members[1].color);
  CHECK(f.members[1].origins.front().g == parse_word("b"));
  CHECK(f.color_count() == 1);
}

TEST_CASE("scalar multiples are merged") {
  const std::vector<RingElement> xs{q("1+a"), q("-2-2*a"), q("b")};
  const auto f = Family::from_elements(xs);
  REQUIRE(f.size() == 2);
  CHECK(f.members[0].element == q("-1-a"));
  CHECK(f.members[0].origins.size() == 2);
  CHECK(f.merge_log.size() == 1);

  const std::vector<RingElement> cancel{q("1+a"), q("-1-a")};
  CHECK(Family::from_elements(cancel).size() == 0);
}

TEST_CASE("the worked family and its extremal graph") {
  TreeOracle tree(2);
  const std::vector<RingElement> xs{q("1+a"), q("b+ba"), q("-1-a-b-ba")};
  const auto f = Family::from_elements(xs);
  REQUIRE(f.size() == 3);
  const auto g = build_gamma(f, Length(0), tree);
  CHECK(g.d == Length(2));
  CHECK(g.vertices == std::vector<std::size_t>{1, 2});
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].v == 1);
  CHECK(g.edges[0].w == 2);
  CHECK(g.edges[0].p == Point::vertex(parse_word("ba")));
  CHECK(g.components.size() == 1);
  CHECK(is_mu_relation(f, Length(0), tree));
  const auto verdicts = component_relations(g, f, Length(0), tree);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].component == std::vector<std::size_t>{1, 2});
  CHECK(verdicts[0].relation);
  // Radii 1/2 for 1+a and 3/2 for 1+a+b+ba.
  CHECK(g.color_radius[f.members[0].color] == Length(1, 2));
  CHECK(g.color_radius[f.members[2].color] == Length(3, 2));
  // Equivariant centers: b+ba is b.(1+a), so its center is b times that of 1+a.
  CHECK(g.centers[1] == tree.act(parse_word("b"), g.centers[0]));
  CHECK(longest_embedded_path(g) == 1);
  CHECK(component_diameter(g, g.components[0]) == 1);
  CHECK(export_graph(g, f, Length(0)) == "vertices 3 delta 0/1\n# 1 0 1/2 2\n# 2 1 3/2 2\n1 2\n");
}

TEST_CASE("singleton family") {
  TreeOracle tree(2);
  const std::vector<RingElement> xs{q("1+ab")};
  const auto f = Family::from_elements(xs);
  const auto g = build_gamma(f, Length(0), tree);
  CHECK(g.edges.empty());
  CHECK(g.vertices.size() == 1);
  CHECK_FALSE(is_mu_relation(f, Length(0), tree));
  CHECK_THROWS_AS(component_relations(g, f, Length(0), tree), Error);
}

TEST_CASE("large mu makes every member a vertex and graphs grow with mu") {
  TreeOracle tree(2);
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    std::vector<RingElement> xs;
    for (int k = 0; k < 4; ++k) xs.push_back(random_element(rng, Q, 2, 4, 3));
    const auto f = Family::from_elements(xs);
    if (f.size() == 0) continue;
    const auto g0 = build_gamma(f, Length(0), tree);
    const auto g1 = build_gamma(f, Length(1), tree);
    const auto big = build_gamma(f, g0.d, tree);
    CHECK(big.vertices.size() == f.size());
    for (auto v : g0.vertices) CHECK(g1.is_vertex(v));
    for (const auto& e : g0.edges) CHECK(g1.adjacent(e.v, e.w));
    for (std::size_t v = 0; v < f.size(); ++v) {
      // Members sharing a color have centers related by the same translation.
      for (std::size_t w = 0; w < f.size(); ++w) {
        if (f.members[v].color != f.members[w].color) continue;
        const Word h = f.members[w].translator * f.members[v].translator.inverse();
        CHECK(tree.act(h, g0.centers[v]) == g0.centers[w]);
      }
    }
  }
}
