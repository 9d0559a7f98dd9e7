#pragma once

#include <span>
#include <string>
#include <vector>

#include "ring_element.hpp"
#include "space.hpp"

namespace geuclid {

/// Where a family member came from: coefficient * g * xi_source.
struct Origin {
  std::size_t source = 0;
  Word g;
  Scalar coeff;
};

struct Member {
  RingElement element;
  std::size_t color = 0;
  /// element = scale * translator * representative of its color.
  Word translator;
  std::vector<Origin> origins;  // more than one only after a merge
};

/// Indexed family of nonzero elements with colors; no two members are
/// scalar multiples of each other.
struct Family {
  std::vector<Member> members;
  std::vector<RingElement> color_representatives;
  /// One line per merge of scalar-multiple members.
  std::vector<std::string> merge_log;

  [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
  [[nodiscard]] std::size_t color_count() const noexcept { return color_representatives.size(); }
  [[nodiscard]] RingElement sum() const;
  [[nodiscard]] RingElement sum(std::span<const std::size_t> subset) const;

  /// Family of the given elements (origin i, g = 1, coefficient 1). Zero
  /// elements are skipped; scalar multiples are merged.
  static Family from_elements(std::span<const RingElement> elements);
  /// Sub-family on the given member indices (colors renumbered).
  [[nodiscard]] Family restricted(std::span<const std::size_t> subset) const;
};

/// Members alpha_i^g * g * xi_i for g in supp(alpha_i), ordered by (i, g).
Family expand_relation(std::span<const RingElement> xi, std::span<const RingElement> alpha);

struct GammaEdge {
  std::size_t v = 0;
  std::size_t w = 0;
  Point p;
};

/// The graph on members whose support meets {p : |p| >= d - mu}, with an
/// edge per shared extremal point.
struct ExtremalGraph {
  Length mu{0};
  Length d{0};
  std::vector<std::size_t> vertices;             // ascending member indices
  std::vector<GammaEdge> edges;                  // sorted by (v, w, p)
  std::vector<std::vector<std::size_t>> components;  // sorted, ordered by least member
  std::vector<Length> member_abs;                // |xi_v| for every member
  std::vector<Point> centers;                    // equivariant center per member
  std::vector<Length> color_radius;              // r_i per color

  [[nodiscard]] bool is_vertex(std::size_t v) const;
  [[nodiscard]] bool adjacent(std::size_t v, std::size_t w) const;
  /// Index into `components` of the component containing v (v must be a vertex).
  [[nodiscard]] std::size_t component_of(std::size_t v) const;
  [[nodiscard]] std::vector<std::size_t> neighbors(std::size_t v) const;
};

ExtremalGraph build_gamma(const Family& family, Length mu, const SpaceOracle& oracle);

/// |sum| < max |xi_v| - mu, with |0| = -inf.
bool is_mu_relation(const Family& family, Length mu, const SpaceOracle& oracle);
bool is_mu_relation(const Family& family, std::span<const std::size_t> subset, Length mu, const SpaceOracle& oracle);

struct ComponentVerdict {
  std::vector<std::size_t> component;
  bool relation = false;
};

/// For each component containing a member of maximal |xi_v|, whether it
/// defines its own mu-relation. Precondition: the family is a mu-relation.
std::vector<ComponentVerdict> component_relations(const ExtremalGraph& graph, const Family& family, Length mu,
                                                  const SpaceOracle& oracle);

/// Number of edges on a longest embedded (vertex-simple) path, over all
/// components, by exhaustive search. Parallel edges count once.
std::size_t longest_embedded_path(const ExtremalGraph& graph);
/// Largest graph distance between two vertices of one component.
std::size_t component_diameter(const ExtremalGraph& graph, std::span<const std::size_t> component);

/// Edge list with `# v color r_v |xi_v|` annotations for the graph vertices.
std::string export_graph(const ExtremalGraph& graph, const Family& family, Length delta);

}  // namespace geuclid
