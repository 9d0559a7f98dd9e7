#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "length.hpp"
#include "word.hpp"

namespace geuclid {

/// A point of a unit-edge metric graph on which the free group acts: either a
/// vertex (a == b) or the midpoint of the edge {a, b} with a < b in shortlex.
struct Point {
  Word a;
  Word b;

  static Point vertex(Word w);
  static Point midpoint(Word u, Word v);

  [[nodiscard]] bool is_vertex() const { return a == b; }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& p, const Point& q) {
    if (auto c = p.a <=> q.a; c != 0) return c;
    return p.b <=> q.b;
  }
};

/// Metric-space contract shared by the exact tree and the finite Cayley-ball
/// graph. Vertices are group elements, the basepoint is the identity, and the
/// group acts by left multiplication.
class SpaceOracle {
 public:
  virtual ~SpaceOracle() = default;

  [[nodiscard]] virtual std::string kind() const = 0;
  [[nodiscard]] virtual int rank() const = 0;
  [[nodiscard]] virtual Length delta() const = 0;
  [[nodiscard]] virtual bool is_tree() const = 0;

  /// Graph distance between two vertices; throws OutOfDomain outside the space.
  [[nodiscard]] virtual std::int64_t vertex_distance(const Word& u, const Word& v) const = 0;
  [[nodiscard]] virtual bool contains(const Word& v) const = 0;
  /// Whether distances from v are trustworthy (inside radius/2 for balls).
  [[nodiscard]] virtual bool certified(const Word& v) const = 0;
  [[nodiscard]] virtual std::vector<Word> neighbors(const Word& v) const = 0;
  /// Next vertex on the deterministic geodesic from `from` to `to`.
  [[nodiscard]] virtual Word step_toward(const Word& from, const Word& to) const = 0;
  /// Vertices and edge midpoints of the certified region (finite oracles only).
  [[nodiscard]] virtual std::vector<Point> certified_points() const = 0;
  [[nodiscard]] virtual std::string description() const = 0;

  [[nodiscard]] Point origin() const { return Point::vertex(Word{}); }
  [[nodiscard]] bool contains(const Point& p) const { return contains(p.a) && contains(p.b); }
  [[nodiscard]] bool certified(const Point& p) const { return certified(p.a) && certified(p.b); }

  [[nodiscard]] Length dist(const Point& p, const Point& q) const;
  /// |p| = dist(o, p).
  [[nodiscard]] Length norm(const Point& p) const { return dist(origin(), p); }
  /// g . p; throws OutOfDomain if the image leaves a finite oracle.
  [[nodiscard]] Point act(const Word& g, const Point& p) const;
  /// Point at distance t from `from` on the deterministic geodesic to `to`.
  /// t is clamped to [0, dist] and snapped down to the half-integer grid.
  [[nodiscard]] Point point_at(const Point& from, const Point& to, Length t) const;
  [[nodiscard]] Point midpoint_on_diameter(const Point& a, const Point& b) const;

  /// Throws OutOfDomain unless every point lies in the certified region.
  void require_certified(std::span<const Point> points, const char* what) const;
};

/// The Cayley tree of the free group of the given rank (delta = 0).
class TreeOracle final : public SpaceOracle {
 public:
  explicit TreeOracle(int rank);

  [[nodiscard]] std::string kind() const override { return "tree"; }
  [[nodiscard]] int rank() const override { return rank_; }
  [[nodiscard]] Length delta() const override { return Length(0); }
  [[nodiscard]] bool is_tree() const override { return true; }
  [[nodiscard]] std::int64_t vertex_distance(const Word& u, const Word& v) const override;
  [[nodiscard]] bool contains(const Word& v) const override;
  [[nodiscard]] bool certified(const Word& v) const override { return contains(v); }
  [[nodiscard]] std::vector<Word> neighbors(const Word& v) const override;
  [[nodiscard]] Word step_toward(const Word& from, const Word& to) const override;
  [[nodiscard]] std::vector<Point> certified_points() const override;
  [[nodiscard]] std::string description() const override;

 private:
  int rank_;
};

/// Ball of the given radius in the Cayley graph of a free group with an
/// enlarged (redundant) generating set; distances by breadth-first search
/// inside the ball.
class CayleyBallOracle final : public SpaceOracle {
 public:
  CayleyBallOracle(int rank, std::vector<Word> extra_generators, int radius, std::size_t vertex_cap);

  [[nodiscard]] std::string kind() const override { return "cayley-ball"; }
  [[nodiscard]] int rank() const override { return rank_; }
  [[nodiscard]] Length delta() const override { return delta_; }
  [[nodiscard]] bool is_tree() const override { return false; }
  [[nodiscard]] std::int64_t vertex_distance(const Word& u, const Word& v) const override;
  [[nodiscard]] bool contains(const Word& v) const override { return index_.count(v) != 0; }
  [[nodiscard]] bool certified(const Word& v) const override;
  [[nodiscard]] std::vector<Word> neighbors(const Word& v) const override;
  [[nodiscard]] Word step_toward(const Word& from, const Word& to) const override;
  [[nodiscard]] std::vector<Point> certified_points() const override;
  [[nodiscard]] std::string description() const override;

  [[nodiscard]] int radius() const noexcept { return radius_; }
  [[nodiscard]] int certified_radius() const noexcept { return radius_ / 2; }
  [[nodiscard]] const std::vector<Word>& extra_generators() const noexcept { return extra_; }
  [[nodiscard]] const std::vector<Word>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] std::size_t id_of(const Word& v) const;
  /// Generating-set length of a vertex (BFS depth from the identity).
  [[nodiscard]] int depth(const Word& v) const { return depth_[id_of(v)]; }
  /// Undirected edges (u < v by id), sorted.
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  [[nodiscard]] const std::string& caveat() const noexcept { return caveat_; }
  /// Four-point constant over the certified vertices and edge midpoints.
  [[nodiscard]] Length four_point_constant() const noexcept { return four_point_; }
  /// Largest gap between the points at equal distance t <= <p,q>_r from r on
  /// the oracle's geodesics [r,p] and [r,q], over certified vertices r, p, q.
  [[nodiscard]] Length thin_triangle_constant() const noexcept { return thin_; }

 private:
  std::shared_ptr<const std::vector<std::int16_t>> row(std::size_t source) const;
  [[nodiscard]] Length compute_thin_constant() const;

  int rank_;
  std::vector<Word> extra_;
  int radius_;
  std::vector<Word> vertices_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> depth_;
  Length delta_{0};
  Length four_point_{0};
  Length thin_{0};
  std::string caveat_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::size_t, std::shared_ptr<const std::vector<std::int16_t>>> rows_;
};

// ---------------------------------------------------------------------------
// Free functions over any oracle.

/// <p, q>_base = (|p - base| + |q - base| - |p - q|) / 2.
Length gromov_product(const SpaceOracle& oracle, const Point& p, const Point& q, const Point& base);

struct FourPointResult {
  Length delta{0};
  bool degenerate = false;  // fewer than four distinct points
};

/// Largest four-point defect over all quadruples, clamped at 0.
FourPointResult four_point_delta(const SpaceOracle& oracle, std::span<const Point> points);
/// Same scan over a precomputed symmetric distance matrix (row-major, n x n).
Length four_point_delta(std::span<const Length> distances, std::size_t n);

struct Displacement {
  Length value{0};
  bool exact = false;  // false: minimum over a sample, an upper bound on the infimum
  std::size_t witnesses_scanned = 0;
  Word witness_g;
  Point witness_p;
};

/// Minimum of dist(g.p, p) over nontrivial g with length <= group_ball_radius
/// and p among the oracle's sample points.
Displacement min_displacement(const SpaceOracle& oracle, int group_ball_radius);

struct CenterResult {
  Point center;
  Length radius_bound{0};
  Point diameter_a;
  Point diameter_b;
  Length diameter{0};
};

/// Midpoint of the shortlex-least diameter-realizing pair; every point of X lies
/// within diam/2 + delta of it.
CenterResult eps_center(const SpaceOracle& oracle, std::span<const Point> points);

/// Diameter of a finite point set (0 for singletons).
Length diameter(const SpaceOracle& oracle, std::span<const Point> points);

std::unique_ptr<CayleyBallOracle> build_cayley_ball(int rank, std::vector<Word> extra_generators, int radius,
                                                    std::size_t vertex_cap = 200000);

struct HypothesisReport {
  int n = 1;
  Length delta{0};
  Length displacement_lower_bound{0};
  Length threshold{0};
  bool satisfied = false;
  std::string caveats;
};

/// Threshold (2n+11)^2 delta against a displacement value.
HypothesisReport hypothesis_report(int n, Length delta, Length displacement);
HypothesisReport check_hypothesis(const SpaceOracle& oracle, int n);

/// `vertices N delta D/Q` header followed by one `u v` line per edge.
std::string export_edge_list(const CayleyBallOracle& oracle);

}  // namespace geuclid
