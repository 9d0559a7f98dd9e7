#include "doctest.h"

#include <algorithm>
#include <deque>
#include <map>

#include "error.hpp"
#include "grammar.hpp"
#include "random.hpp"
#include "space.hpp"

using namespace geuclid;

namespace {

Point v(const char* text) { return Point::vertex(parse_word(text)); }

// Reference four-point constant straight from the Gromov-product definition:
// max over w and ordered (x, y, z) of min(<x,y>_w, <y,z>_w) - <x,z>_w.
Length naive_delta(const std::vector<std::vector<Length>>& d) {
  // All distances here are half-integers; work in quarters to stay in integers.
  const std::size_t n = d.size();
  std::vector<std::vector<std::int64_t>> h(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      REQUIRE((d[i][j] * 2).denominator() == 1);
      h[i][j] = (d[i][j] * 2).numerator();
    }
  }
  auto gp = [&](std::size_t x, std::size_t y, std::size_t w) { return h[x][w] + h[y][w] - h[x][y]; };
  std::int64_t best = 0;
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          best = std::max(best, std::min(gp(x, y, w), gp(y, z, w)) - gp(x, z, w));
        }
      }
    }
  }
  return Length(best, 4);
}

std::vector<std::vector<Length>> cycle_metric(std::size_t n) {
  std::vector<std::vector<Length>> d(n, std::vector<Length>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      d[i][j] = Length(static_cast<std::int64_t>(std::min(k, n - k)));
    }
  }
  return d;
}

Length matrix_delta(const std::vector<std::vector<Length>>& d) {
  std::vector<Length> flat;
  for (const auto& row : d) flat.insert(flat.end(), row.begin(), row.end());
  return four_point_delta(flat, d.size());
}

}  // namespace

TEST_CASE("gromov products on the tree") {
  TreeOracle tree(2);
  CHECK(gromov_product(tree, v("a"), v("a"), v("1")) == Length(1));
  CHECK(gromov_product(tree, v("1"), v("abAB"), v("1")) == Length(0));
  CHECK(gromov_product(tree, v("a"), v("ab"), v("1")) == Length(1));
}

TEST_CASE("tree distances with edge midpoints") {
  TreeOracle tree(2);
  const Point m = Point::midpoint(parse_word("a"), parse_word("ab"));
  CHECK(tree.dist(v("1"), m) == Length(3, 2));
  CHECK(tree.dist(m, v("b")) == Length(5, 2));
  CHECK(tree.dist(m, Point::midpoint(parse_word("1"), parse_word("a"))) == Length(1));
  CHECK(tree.point_at(v("A"), v("ab"), Length(3, 2)) == Point::midpoint(parse_word("a"), parse_word("1")));
  CHECK(tree.point_at(v("A"), v("ab"), Length(1)) == v("1"));
  CHECK(tree.point_at(v("A"), v("ab"), Length(99)) == v("ab"));
}

TEST_CASE("four-point constant") {
  CHECK(matrix_delta(cycle_metric(6)) == Length(1));
  CHECK(naive_delta(cycle_metric(6)) == Length(1));
  CHECK(matrix_delta(cycle_metric(4)) == naive_delta(cycle_metric(4)));

  TreeOracle tree(2);
  std::vector<Point> pts;
  for (const auto& w : words_up_to(2, 2)) pts.push_back(Point::vertex(w));
  CHECK(four_point_delta(tree, pts).delta == Length(0));

  std::vector<Point> same(5, v("ab"));
  const auto r = four_point_delta(tree, same);
  CHECK(r.degenerate);
  CHECK(r.delta == Length(0));
}

TEST_CASE("optimized four-point scan agrees with the definition on random graphs") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 5 + rng.below(5);
    // Random connected graph: a spanning path plus random chords.
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 1; i < n; ++i) {
      adj[i].push_back(i - 1);
      adj[i - 1].push_back(i);
    }
    for (int e = 0; e < 4; ++e) {
      const std::size_t a = rng.below(n);
      const std::size_t b = rng.below(n);
      if (a == b) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::vector<std::vector<Length>> d(n, std::vector<Length>(n));
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> dist(n, -1);
      std::deque<std::size_t> q{s};
      dist[s] = 0;
      while (!q.empty()) {
        const auto x = q.front();
        q.pop_front();
        for (auto y : adj[x]) {
          if (dist[y] < 0) {
            dist[y] = dist[x] + 1;
            q.push_back(y);
          }
        }
      }
      for (std::size_t j = 0; j < n; ++j) d[s][j] = Length(dist[j]);
    }
    CHECK(matrix_delta(d) == naive_delta(d));
  }
}

TEST_CASE("eps_center examples") {
  TreeOracle tree(2);
  {
    std::vector<Point> x{v("a"), v("b")};
    const auto c = eps_center(tree, x);
    CHECK(c.center == v("1"));
    CHECK(c.radius_bound == Length(1));
  }
  {
    std::vector<Point> x{v("ab")};
    const auto c = eps_center(tree, x);
    CHECK(c.center == v("ab"));
    CHECK(c.radius_bound == Length(0));
  }
  {
    std::vector<Point> x{v("1"), v("a"), v("ab")};
    const auto c = eps_center(tree, x);
    CHECK(c.center == v("a"));
    CHECK(c.radius_bound == Length(1));
  }
  {
    // Odd diameter: the center is an edge midpoint.
    std::vector<Point> x{v("b"), v("ba")};
    const auto c = eps_center(tree, x);
    CHECK(c.center == Point::midpoint(parse_word("b"), parse_word("ba")));
    CHECK(c.radius_bound == Length(1, 2));
  }
  std::vector<Point> empty;
  CHECK_THROWS_AS(eps_center(tree, empty), Error);
}

TEST_CASE("eps_center covers its set on random tree sets") {
  TreeOracle tree(2);
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> x;
    const auto k = 1 + rng.below(6);
    for (std::size_t i = 0; i < k; ++i) x.push_back(Point::vertex(random_word_up_to(rng, 2, 5)));
    const auto c = eps_center(tree, x);
    for (const auto& p : x) CHECK(tree.dist(c.center, p) <= c.radius_bound);
    // Deterministic regardless of input order.
    std::reverse(x.begin(), x.end());
    CHECK(eps_center(tree, x).center == c.center);
  }
}

TEST_CASE("minimal displacement") {
  TreeOracle tree(2);
  const auto d3 = min_displacement(tree, 3);
  CHECK(d3.value == Length(1));
  CHECK(d3.exact);
  CHECK(min_displacement(tree, 1).value == Length(1));
  CHECK_THROWS_AS(min_displacement(tree, 0), Error);

  auto point = build_cayley_ball(2, {}, 0);
  CHECK_THROWS_AS(min_displacement(*point, 1), Error);
}

TEST_CASE("Cayley ball oracles") {
  auto plain = build_cayley_ball(2, {}, 3);
  CHECK(plain->vertices().size() == 53);
  CHECK(plain->delta() == Length(0));
  for (const auto& a : plain->vertices()) {
    for (const auto& b : plain->vertices()) {
      if (plain->certified(a) && plain->certified(b)) {
        CHECK(plain->vertex_distance(a, b) == static_cast<std::int64_t>(tree_distance(a, b)));
      }
    }
  }

  auto shortcut = build_cayley_ball(2, {parse_word("ab")}, 4);
  CHECK(shortcut->dist(v("1"), v("ab")) == Length(1));
  CHECK(shortcut->dist(v("1"), v("BA")) == Length(1));
  CHECK(shortcut->dist(v("a"), v("b")) == Length(2));

  auto line = build_cayley_ball(1, {}, 5);
  CHECK(line->vertices().size() == 11);
  CHECK(line->delta() == Length(0));

  CHECK_THROWS_AS(build_cayley_ball(2, {parse_word("ab")}, 6, 1000), Error);
  CHECK_THROWS_AS((void)line->dist(v("1"), v("aaaaaa")), Error);
}

TEST_CASE("Cayley ball delta matches the definition on the certified region") {
  auto ball = build_cayley_ball(2, {parse_word("ab")}, 4);
  const auto pts = ball->certified_points();
  std::vector<std::vector<Length>> d(pts.size(), std::vector<Length>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) d[i][j] = ball->dist(pts[i], pts[j]);
  }
  CHECK(ball->four_point_constant() == naive_delta(d));
  CHECK(ball->four_point_constant() > Length(0));
  CHECK(ball->delta() == std::max(ball->four_point_constant(), ball->thin_triangle_constant()));
}

TEST_CASE("Cayley ball thin-triangle constant matches a direct scan") {
  for (int radius : {4, 6}) {
    auto ball = build_cayley_ball(2, {parse_word("ab")}, radius);
    std::vector<Point> vs;
    for (const auto& p : ball->certified_points()) {
      if (p.is_vertex()) vs.push_back(p);
    }
    Length worst(0);
    for (const auto& r : vs) {
      for (const auto& p : vs) {
        for (const auto& q : vs) {
          const Length g = gromov_product(*ball, p, q, r);
          for (Length t(0); t <= g; t += Length(1, 2)) {
            worst = std::max(worst, ball->dist(ball->point_at(r, p, t), ball->point_at(r, q, t)));
          }
        }
      }
      if (radius == 6 && worst > Length(0)) break;  // the full scan at radius 6 is slow
    }
    if (radius == 4) CHECK(ball->thin_triangle_constant() == worst);
    CHECK(ball->thin_triangle_constant() >= worst);
  }
  auto ball = build_cayley_ball(2, {parse_word("ab")}, 6);
  CHECK(ball->four_point_constant() == Length(1, 2));
  CHECK(ball->thin_triangle_constant() == Length(1));
  CHECK(ball->delta() == Length(1));
  auto tree_like = build_cayley_ball(2, {}, 4);
  CHECK(tree_like->thin_triangle_constant() == Length(0));
}

TEST_CASE("graph action is isometric inside the ball") {
  auto ball = build_cayley_ball(2, {parse_word("ab")}, 6);
  CHECK(ball->vertices().size() == 8191);
  const auto pts = ball->certified_points();
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const Point& p = pts[rng.below(pts.size())];
    const Point& q = pts[rng.below(pts.size())];
    const Word g = random_word_up_to(rng, 2, 1);
    CHECK(ball->dist(ball->act(g, p), ball->act(g, q)) == ball->dist(p, q));
    CHECK(ball->dist(p, q) == ball->dist(q, p));
  }
}

TEST_CASE("hypothesis report") {
  TreeOracle tree(2);
  for (int n : {1, 5, 100}) CHECK(check_hypothesis(tree, n).satisfied);
  const auto r = hypothesis_report(1, Length(1), Length(1));
  CHECK(r.threshold == Length(169));
  CHECK_FALSE(r.satisfied);
  CHECK(hypothesis_report(100, Length(0), Length(1)).satisfied);
  CHECK_THROWS_AS(hypothesis_report(0, Length(0), Length(1)), Error);
}

TEST_CASE("edge list export") {
  auto line = build_cayley_ball(1, {}, 2);
  CHECK(export_edge_list(*line) == "vertices 5 delta 0/1\n0 1\n0 2\n1 3\n2 4\n");
}
