#include "space.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "error.hpp"

namespace geuclid {

// ---------------------------------------------------------------------------
// Point

Point Point::vertex(Word w) {
  Point p;
  p.a = w;
  p.b = std::move(w);
  return p;
}

Point Point::midpoint(Word u, Word v) {
  if (v < u) std::swap(u, v);
  return Point{std::move(u), std::move(v)};
}

std::string Point::to_string() const {
  if (is_vertex()) return a.to_string();
  return "[" + a.to_string() + "|" + b.to_string() + "]";
}

namespace {

std::vector<Word> endpoints(const Point& p) {
  if (p.is_vertex()) return {p.a};
  return {p.a, p.b};
}

}  // namespace

// ---------------------------------------------------------------------------
// SpaceOracle

Length SpaceOracle::dist(const Point& p, const Point& q) const {
  if (p == q) return Length(0);
  std::int64_t best = -1;
  for (const auto& x : endpoints(p)) {
    for (const auto& y : endpoints(q)) {
      const std::int64_t d = vertex_distance(x, y);
      if (best < 0 || d < best) best = d;
    }
  }
  Length out(best);
  if (!p.is_vertex()) out += Length(1, 2);
  if (!q.is_vertex()) out += Length(1, 2);
  return out;
}

Point SpaceOracle::act(const Word& g, const Point& p) const {
  Point image = p.is_vertex() ? Point::vertex(g * p.a) : Point::midpoint(g * p.a, g * p.b);
  if (!contains(image)) {
    throw Error(ErrorCode::OutOfDomain, "g.p = " + image.to_string() + " leaves the oracle's space");
  }
  return image;
}

Point SpaceOracle::point_at(const Point& from, const Point& to, Length t) const {
  if (from == to) return from;
  const Length total = dist(from, to);
  if (t < Length(0)) t = Length(0);
  if (t > total) t = total;
  // Index into the half-step sequence of the geodesic.
  const auto steps = static_cast<std::int64_t>(boost::rational_cast<double>(t * 2) + 1e-9);

  // Choose the endpoint pair realizing the distance (first in order on ties).
  Word start;
  Word finish;
  std::int64_t best = -1;
  for (const auto& x : endpoints(from)) {
    for (const auto& y : endpoints(to)) {
      const std::int64_t d = vertex_distance(x, y);
      if (best < 0 || d < best) {
        best = d;
        start = x;
        finish = y;
      }
    }
  }
  std::int64_t index = 0;
  if (!from.is_vertex()) {
    if (steps == 0) return from;
    index = 1;
  }
  Word cur = start;
  if (index == steps) return Point::vertex(cur);
  while (cur != finish) {
    Word next = step_toward(cur, finish);
    if (++index == steps) return Point::midpoint(cur, next);
    cur = std::move(next);
    if (++index == steps) return Point::vertex(cur);
  }
  return to;
}

Point SpaceOracle::midpoint_on_diameter(const Point& a, const Point& b) const {
  return point_at(a, b, half(dist(a, b)));
}

void SpaceOracle::require_certified(std::span<const Point> points, const char* what) const {
  for (const auto& p : points) {
    if (!certified(p)) {
      throw Error(ErrorCode::OutOfDomain,
                  std::string(what) + ": point " + p.to_string() + " lies outside the certified region of " +
                      description());
    }
  }
}

// ---------------------------------------------------------------------------
// TreeOracle

TreeOracle::TreeOracle(int rank) : rank_(rank) {
  if (rank < 1 || rank > kMaxRank) throw Error(ErrorCode::Precondition, "tree rank must be in 1..26");
}

std::int64_t TreeOracle::vertex_distance(const Word& u, const Word& v) const {
  return static_cast<std::int64_t>(tree_distance(u, v));
}

bool TreeOracle::contains(const Word& v) const { return v.max_generator() <= rank_; }

std::vector<Word> TreeOracle::neighbors(const Word& v) const {
  std::vector<Word> out;
  for (int g = 0; g < rank_; ++g) {
    out.push_back(v * Word::generator(g));
    out.push_back(v * Word::generator(g, true));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Word TreeOracle::step_toward(const Word& from, const Word& to) const {
  const Word path = from.inverse() * to;
  if (path.is_identity()) return from;
  return from * Word{path.letters().front()};
}

std::vector<Point> TreeOracle::certified_points() const {
  throw Error(ErrorCode::Unsupported, "the tree oracle has no finite point enumeration");
}

std::string TreeOracle::description() const { return "tree rank=" + std::to_string(rank_); }

// ---------------------------------------------------------------------------
// CayleyBallOracle

CayleyBallOracle::CayleyBallOracle(int rank, std::vector<Word> extra_generators, int radius, std::size_t vertex_cap)
    : rank_(rank), extra_(std::move(extra_generators)), radius_(radius) {
  if (rank < 1 || rank > kMaxRank) throw Error(ErrorCode::Precondition, "ball rank must be in 1..26");
  if (radius < 0) throw Error(ErrorCode::Precondition, "ball radius must be non-negative");
  std::vector<Word> gens;
  for (int g = 0; g < rank; ++g) {
    gens.push_back(Word::generator(g));
    gens.push_back(Word::generator(g, true));
  }
  for (const auto& w : extra_) {
    if (w.is_identity()) throw Error(ErrorCode::Precondition, "extra generators must be nontrivial");
    if (w.max_generator() > rank) {
      throw Error(ErrorCode::Precondition, "extra generator " + w.to_string() + " uses letters beyond the rank");
    }
    gens.push_back(w);
    gens.push_back(w.inverse());
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // Breadth-first enumeration by generating-set length.
  std::unordered_map<Word, int, WordHash> depth{{Word{}, 0}};
  std::vector<Word> frontier{Word{}};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const auto& v : frontier) {
      for (const auto& s : gens) {
        Word u = v * s;
        if (depth.emplace(u, r).second) {
          next.push_back(std::move(u));
          if (depth.size() > vertex_cap) {
            throw Error(ErrorCode::Resource, "Cayley ball exceeds the vertex cap of " + std::to_string(vertex_cap));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  vertices_.reserve(depth.size());
  for (const auto& [w, d] : depth) vertices_.push_back(w);
  std::sort(vertices_.begin(), vertices_.end(), [&](const Word& x, const Word& y) {
    const int dx = depth.at(x);
    const int dy = depth.at(y);
    return dx != dy ? dx < dy : x < y;
  });
  depth_.resize(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    index_.emplace(vertices_[i], i);
    depth_[i] = depth.at(vertices_[i]);
  }
  adjacency_.resize(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (const auto& s : gens) {
      auto it = index_.find(vertices_[i] * s);
      if (it != index_.end() && it->second != i) adjacency_[i].push_back(it->second);
    }
    std::sort(adjacency_[i].begin(), adjacency_[i].end());
    adjacency_[i].erase(std::unique(adjacency_[i].begin(), adjacency_[i].end()), adjacency_[i].end());
  }

  const auto pts = certified_points();
  four_point_ = four_point_delta(*this, pts).delta;
  thin_ = compute_thin_constant();
  delta_ = std::max(four_point_, thin_);
  std::ostringstream os;
  os << "distances certified only for points within radius " << certified_radius()
     << " of the basepoint; delta is the larger of the four-point constant (" << to_string(four_point_)
     << ") over the " << pts.size() << " vertices and edge midpoints of that region and the thin-triangle constant ("
     << to_string(thin_) << ") along the oracle's geodesics between its vertices";
  caveat_ = os.str();
}

Length CayleyBallOracle::compute_thin_constant() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < vertices_.size() && depth_[i] <= certified_radius(); ++i) ids.push_back(i);
  auto d = [&](std::size_t i, std::size_t j) -> int {
    return i == j ? 0 : (*row(std::min(i, j)))[std::max(i, j)];
  };
  // Geodesic vertex sequences, following the same first-neighbor rule as step_toward.
  const std::size_t m = ids.size();
  std::vector<std::vector<std::size_t>> path(m * m);
  for (std::size_t b = 0; b < m; ++b) {
    const auto target = row(ids[b]);
    for (std::size_t a = 0; a < m; ++a) {
      auto& p = path[a * m + b];
      std::size_t cur = ids[a];
      p.push_back(cur);
      while (cur != ids[b]) {
        for (std::size_t j : adjacency_[cur]) {
          if ((*target)[j] == (*target)[cur] - 1) {
            cur = j;
            break;
          }
        }
        p.push_back(cur);
      }
    }
  }
  // Half-integer points on a path, as (u, v) with u == v for vertices; distances doubled.
  auto at = [](const std::vector<std::size_t>& p, int s) {
    return s % 2 == 0 ? std::pair{p[s / 2], p[s / 2]} : std::pair{p[(s - 1) / 2], p[(s + 1) / 2]};
  };
  auto dist2 = [&](std::pair<std::size_t, std::size_t> x, std::pair<std::size_t, std::size_t> y) {
    const bool xv = x.first == x.second, yv = y.first == y.second;
    if (xv && yv) return 2 * d(x.first, y.first);
    if (xv || yv) {
      const auto v = xv ? x.first : y.first;
      const auto e = xv ? y : x;
      return 1 + 2 * std::min(d(e.first, v), d(e.second, v));
    }
    if (std::minmax(x.first, x.second) == std::minmax(y.first, y.second)) return 0;
    return 2 + 2 * std::min({d(x.first, y.first), d(x.first, y.second), d(x.second, y.first), d(x.second, y.second)});
  };
  int worst = 0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const int g2 = d(ids[r], ids[p]) + d(ids[r], ids[q]) - d(ids[p], ids[q]);
        const auto& rp = path[r * m + p];
        const auto& rq = path[r * m + q];
        for (int s = 1; s <= g2; ++s) worst = std::max(worst, dist2(at(rp, s), at(rq, s)));
      }
    }
  }
  return Length(worst, 2);
}

std::size_t CayleyBallOracle::id_of(const Word& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) {
    throw Error(ErrorCode::OutOfDomain, "vertex " + v.to_string() + " is outside the Cayley ball of radius " +
                                            std::to_string(radius_));
  }
  return it->second;
}

bool CayleyBallOracle::certified(const Word& v) const {
  auto it = index_.find(v);
  return it != index_.end() && depth_[it->second] <= certified_radius();
}

std::shared_ptr<const std::vector<std::int16_t>> CayleyBallOracle::row(std::size_t source) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = rows_.find(source);
    if (it != rows_.end()) return it->second;
  }
  auto dist = std::make_shared<std::vector<std::int16_t>>(vertices_.size(), std::int16_t{-1});
  std::deque<std::size_t> queue{source};
  (*dist)[source] = 0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : adjacency_[x]) {
      if ((*dist)[y] < 0) {
        (*dist)[y] = static_cast<std::int16_t>((*dist)[x] + 1);
        queue.push_back(y);
      }
    }
  }
  std::lock_guard lock(cache_mutex_);
  return rows_.emplace(source, std::move(dist)).first->second;
}

std::int64_t CayleyBallOracle::vertex_distance(const Word& u, const Word& v) const {
  const std::size_t i = id_of(u);
  const std::size_t j = id_of(v);
  if (i == j) return 0;
  return (*row(std::min(i, j)))[std::max(i, j)];
}

std::vector<Word> CayleyBallOracle::neighbors(const Word& v) const {
  std::vector<Word> out;
  for (std::size_t j : adjacency_[id_of(v)]) out.push_back(vertices_[j]);
  return out;
}

Word CayleyBallOracle::step_toward(const Word& from, const Word& to) const {
  const std::size_t i = id_of(from);
  const std::size_t target = id_of(to);
  if (i == target) return from;
  const auto r = row(target);
  for (std::size_t j : adjacency_[i]) {
    if ((*r)[j] == (*r)[i] - 1) return vertices_[j];
  }
  throw Error(ErrorCode::Internal, "no geodesic step from " + from.to_string() + " to " + to.to_string());
}

std::vector<Point> CayleyBallOracle::certified_points() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < vertices_.size() && depth_[i] <= certified_radius(); ++i) {
    out.push_back(Point::vertex(vertices_[i]));
  }
  for (std::size_t i = 0; i < vertices_.size() && depth_[i] <= certified_radius(); ++i) {
    for (std::size_t j : adjacency_[i]) {
      if (j > i && depth_[j] <= certified_radius()) out.push_back(Point::midpoint(vertices_[i], vertices_[j]));
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> CayleyBallOracle::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (std::size_t j : adjacency_[i]) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

std::string CayleyBallOracle::description() const {
  std::string s = "cayley-ball rank=" + std::to_string(rank_) + " extra=";
  for (std::size_t i = 0; i < extra_.size(); ++i) s += (i ? "," : "") + extra_[i].to_string();
  if (extra_.empty()) s += "-";
  return s + " radius=" + std::to_string(radius_);
}

// ---------------------------------------------------------------------------
// Free functions

Length gromov_product(const SpaceOracle& oracle, const Point& p, const Point& q, const Point& base) {
  return half(oracle.dist(p, base) + oracle.dist(q, base) - oracle.dist(p, q));
}

Length four_point_delta(std::span<const Length> distances, std::size_t n) {
  if (n < 4) return Length(0);
  std::int64_t scale = 1;
  for (const auto& d : distances) scale = std::lcm(scale, d.denominator());
  std::vector<std::int32_t> m(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    m[i] = static_cast<std::int32_t>(distances[i].numerator() * (scale / distances[i].denominator()));
  }
  std::int32_t best = 0;  // in units of 1/scale, doubled
  for (std::size_t x = 0; x < n; ++x) {
    const std::int32_t* rx = &m[x * n];
    for (std::size_t y = x + 1; y < n; ++y) {
      const std::int32_t* ry = &m[y * n];
      const std::int32_t dxy = rx[y];
      for (std::size_t z = y + 1; z < n; ++z) {
        const std::int32_t* rz = &m[z * n];
        const std::int32_t dxz = rx[z];
        const std::int32_t dyz = ry[z];
        std::int32_t local = 0;
        for (std::size_t w = z + 1; w < n; ++w) {
          const std::int32_t s1 = dxy + rz[w];
          const std::int32_t s2 = dxz + ry[w];
          const std::int32_t s3 = dyz + rx[w];
          const std::int32_t hi = std::max(s1, std::max(s2, s3));
          const std::int32_t lo = std::min(s1, std::min(s2, s3));
          const std::int32_t defect = 2 * hi + lo - (s1 + s2 + s3);  // largest minus middle
          local = std::max(local, defect);
        }
        best = std::max(best, local);
      }
    }
  }
  return Length(best, 2 * scale);
}

FourPointResult four_point_delta(const SpaceOracle& oracle, std::span<const Point> points) {
  std::vector<Point> uniq(points.begin(), points.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  FourPointResult out;
  if (uniq.size() < 4) {
    out.degenerate = true;
    return out;
  }
  const std::size_t n = uniq.size();
  std::vector<Length> d(n * n, Length(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = oracle.dist(uniq[i], uniq[j]);
  }
  out.delta = four_point_delta(d, n);
  return out;
}

Displacement min_displacement(const SpaceOracle& oracle, int group_ball_radius) {
  if (group_ball_radius < 1) throw Error(ErrorCode::Usage, "group ball radius must be at least 1");
  Displacement out;
  bool found = false;
  std::vector<Word> group;
  std::vector<Point> sample;
  if (oracle.is_tree()) {
    group = words_up_to(oracle.rank(), group_ball_radius);
    for (const auto& w : words_up_to(oracle.rank(), 1)) {
      sample.push_back(Point::vertex(w));
      if (!w.is_identity()) sample.push_back(Point::midpoint(Word{}, w));
    }
    out.exact = true;
  } else {
    const auto& ball = dynamic_cast<const CayleyBallOracle&>(oracle);
    for (const auto& v : ball.vertices()) {
      if (ball.depth(v) <= group_ball_radius) group.push_back(v);
    }
    sample = oracle.certified_points();
  }
  for (const auto& g : group) {
    if (g.is_identity()) continue;
    for (const auto& p : sample) {
      Point image = p.is_vertex() ? Point::vertex(g * p.a) : Point::midpoint(g * p.a, g * p.b);
      if (!oracle.contains(image)) continue;
      const Length d = oracle.dist(image, p);
      ++out.witnesses_scanned;
      if (!found || d < out.value) {
        found = true;
        out.value = d;
        out.witness_g = g;
        out.witness_p = p;
      }
    }
  }
  if (!found) throw Error(ErrorCode::Precondition, "no nontrivial group element acts inside the oracle");
  return out;
}

Length diameter(const SpaceOracle& oracle, std::span<const Point> points) {
  Length best(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, oracle.dist(points[i], points[j]));
  }
  return best;
}

CenterResult eps_center(const SpaceOracle& oracle, std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::Precondition, "eps_center of an empty set");
  std::vector<Point> xs(points.begin(), points.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  CenterResult out;
  if (xs.size() == 1) {
    out.center = out.diameter_a = out.diameter_b = xs.front();
    return out;
  }
  bool first = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const Length d = oracle.dist(xs[i], xs[j]);
      if (first || d > out.diameter) {
        first = false;
        out.diameter = d;
        out.diameter_a = xs[i];
        out.diameter_b = xs[j];
      }
    }
  }
  const Length t = half(out.diameter);
  out.center = oracle.point_at(out.diameter_a, out.diameter_b, t);
  out.radius_bound = t + oracle.delta();
  // Off-grid midpoints (odd half-integer diameters) are snapped by up to 1/4.
  if ((t * 2).denominator() != 1) out.radius_bound += Length(1, 4);
  return out;
}

std::unique_ptr<CayleyBallOracle> build_cayley_ball(int rank, std::vector<Word> extra_generators, int radius,
                                                    std::size_t vertex_cap) {
  return std::make_unique<CayleyBallOracle>(rank, std::move(extra_generators), radius, vertex_cap);
}

HypothesisReport hypothesis_report(int n, Length delta, Length displacement) {
  if (n < 1) throw Error(ErrorCode::Usage, "n must be at least 1");
  HypothesisReport r;
  r.n = n;
  r.delta = delta;
  r.displacement_lower_bound = displacement;
  const Length k(2 * n + 11);
  r.threshold = k * k * delta;
  r.satisfied = displacement > r.threshold;
  return r;
}

HypothesisReport check_hypothesis(const SpaceOracle& oracle, int n) {
  const auto disp = min_displacement(oracle, 2);
  HypothesisReport r = hypothesis_report(n, oracle.delta(), disp.value);
  if (!oracle.is_tree()) {
    const auto& ball = dynamic_cast<const CayleyBallOracle&>(oracle);
    r.caveats = ball.caveat() +
                "; displacement is the minimum over a finite sample (every nontrivial element moves vertices "
                "and edge midpoints by at least 1)";
  }
  return r;
}

std::string export_edge_list(const CayleyBallOracle& oracle) {
  std::ostringstream os;
  os << "vertices " << oracle.vertices().size() << " delta " << to_fraction_string(oracle.delta()) << "\n";
  for (const auto& [u, v] : oracle.edges()) os << u << " " << v << "\n";
  return os.str();
}

}  // namespace geuclid
