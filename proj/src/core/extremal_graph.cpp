#include "extremal_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace geuclid {

namespace {

struct Candidate {
  RingElement element;
  Origin origin;
};

Family assemble(std::vector<Candidate> candidates) {
  Family f;
  std::vector<bool> alive;
  std::vector<std::size_t> raw_color;
  std::vector<RingElement> reps;
  for (auto& c : candidates) {
    if (c.element.is_zero()) continue;
    ColorKey key = color_key(c.element);
    std::size_t color = 0;
    while (color < reps.size() && !(reps[color] == key.representative)) ++color;
    if (color == reps.size()) reps.push_back(key.representative);

    bool merged = false;
    for (std::size_t m = 0; m < f.members.size(); ++m) {
      if (!alive[m] || raw_color[m] != color || f.members[m].translator != key.translator) continue;
      std::ostringstream os;
      os << "merged scalar multiple " << c.element.to_string() << " (source " << c.origin.source << ", g "
         << c.origin.g.to_string() << ") into member " << m;
      f.members[m].element += c.element;
      f.members[m].origins.push_back(c.origin);
      if (f.members[m].element.is_zero()) {
        alive[m] = false;
        os << "; the sum vanished and the member was dropped";
      }
      f.merge_log.push_back(os.str());
      merged = true;
      break;
    }
    if (merged) continue;
    Member mem;
    mem.element = std::move(c.element);
    mem.translator = key.translator;
    mem.origins.push_back(std::move(c.origin));
    f.members.push_back(std::move(mem));
    alive.push_back(true);
    raw_color.push_back(color);
  }
  // Compact and renumber colors by first appearance among surviving members.
  Family out;
  out.merge_log = std::move(f.merge_log);
  std::vector<std::ptrdiff_t> renumber(reps.size(), -1);
  for (std::size_t m = 0; m < f.members.size(); ++m) {
    if (!alive[m]) continue;
    auto& slot = renumber[raw_color[m]];
    if (slot < 0) {
      slot = static_cast<std::ptrdiff_t>(out.color_representatives.size());
      out.color_representatives.push_back(reps[raw_color[m]]);
    }
    Member mem = std::move(f.members[m]);
    mem.color = static_cast<std::size_t>(slot);
    out.members.push_back(std::move(mem));
  }
  return out;
}

}  // namespace

RingElement Family::sum() const {
  std::vector<std::size_t> all(members.size());
  std::iota(all.begin(), all.end(), 0);
  return sum(all);
}

RingElement Family::sum(std::span<const std::size_t> subset) const {
  if (members.empty()) throw Error(ErrorCode::Precondition, "sum over an empty family");
  RingElement s(members.front().element.domain());
  for (std::size_t v : subset) s += members.at(v).element;
  return s;
}

Family Family::from_elements(std::span<const RingElement> elements) {
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].is_zero()) continue;
    cands.push_back({elements[i], Origin{i, Word{}, Scalar::one(elements[i].domain())}});
  }
  return assemble(std::move(cands));
}

Family Family::restricted(std::span<const std::size_t> subset) const {
  Family out;
  std::vector<std::ptrdiff_t> renumber(color_representatives.size(), -1);
  for (std::size_t v : subset) {
    Member m = members.at(v);
    auto& slot = renumber[m.color];
    if (slot < 0) {
      slot = static_cast<std::ptrdiff_t>(out.color_representatives.size());
      out.color_representatives.push_back(color_representatives[m.color]);
    }
    m.color = static_cast<std::size_t>(slot);
    out.members.push_back(std::move(m));
  }
  return out;
}

Family expand_relation(std::span<const RingElement> xi, std::span<const RingElement> alpha) {
  if (xi.size() != alpha.size()) throw Error(ErrorCode::Precondition, "expand_relation: length mismatch");
  if (std::all_of(alpha.begin(), alpha.end(), [](const RingElement& a) { return a.is_zero(); })) {
    throw Error(ErrorCode::Precondition, "expand_relation: all coefficients are zero");
  }
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i].is_zero()) continue;
    for (const auto& [g, c] : alpha[i].terms()) {
      cands.push_back({xi[i].translated(g).scaled(c), Origin{i, g, c}});
    }
  }
  return assemble(std::move(cands));
}

// ---------------------------------------------------------------------------

bool ExtremalGraph::is_vertex(std::size_t v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool ExtremalGraph::adjacent(std::size_t v, std::size_t w) const {
  if (v > w) std::swap(v, w);
  return std::any_of(edges.begin(), edges.end(), [&](const GammaEdge& e) { return e.v == v && e.w == w; });
}

std::size_t ExtremalGraph::component_of(std::size_t v) const {
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (std::binary_search(components[c].begin(), components[c].end(), v)) return c;
  }
  throw Error(ErrorCode::Precondition, "member " + std::to_string(v) + " is not a vertex of the graph");
}

std::vector<std::size_t> ExtremalGraph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges) {
    if (e.v == v) out.push_back(e.w);
    if (e.w == v) out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExtremalGraph build_gamma(const Family& family, Length mu, const SpaceOracle& oracle) {
  if (family.members.empty()) throw Error(ErrorCode::Precondition, "build_gamma of an empty family");
  ExtremalGraph g;
  g.mu = mu;
  for (const auto& m : family.members) {
    oracle.require_certified(support_points(m.element), "build_gamma");
    g.member_abs.push_back(abs_value(m.element, oracle).value());
  }
  g.d = *std::max_element(g.member_abs.begin(), g.member_abs.end());

  std::map<Word, std::vector<std::size_t>> holders;
  for (std::size_t v = 0; v < family.size(); ++v) {
    bool extremal = false;
    for (const auto& [w, c] : family.members[v].element.terms()) {
      if (oracle.norm(Point::vertex(w)) >= g.d - mu) {
        holders[w].push_back(v);
        extremal = true;
      }
    }
    if (extremal) g.vertices.push_back(v);
  }
  for (const auto& [w, vs] : holders) {
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) g.edges.push_back({vs[a], vs[b], Point::vertex(w)});
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const GammaEdge& x, const GammaEdge& y) {
    if (x.v != y.v) return x.v < y.v;
    if (x.w != y.w) return x.w < y.w;
    return x.p < y.p;
  });

  std::vector<std::size_t> parent(family.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) {
    const std::size_t a = find(e.v);
    const std::size_t b = find(e.w);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t v : g.vertices) comps[find(v)].push_back(v);
  for (auto& [root, c] : comps) g.components.push_back(std::move(c));
  std::sort(g.components.begin(), g.components.end());

  // Equivariant centers: one per color, computed on its first member and
  // carried to the others by the group element relating them.
  g.color_radius.assign(family.color_count(), Length(0));
  g.centers.resize(family.size());
  std::vector<std::ptrdiff_t> anchor(family.color_count(), -1);
  for (std::size_t v = 0; v < family.size(); ++v) {
    const Member& m = family.members[v];
    if (anchor[m.color] < 0) {
      anchor[m.color] = static_cast<std::ptrdiff_t>(v);
      const auto pts = support_points(m.element);
      const auto c = eps_center(oracle, pts);
      g.centers[v] = c.center;
      g.color_radius[m.color] = c.radius_bound;
    } else {
      const Member& a = family.members[static_cast<std::size_t>(anchor[m.color])];
      g.centers[v] = oracle.act(m.translator * a.translator.inverse(), g.centers[static_cast<std::size_t>(anchor[m.color])]);
    }
  }
  return g;
}

bool is_mu_relation(const Family& family, std::span<const std::size_t> subset, Length mu, const SpaceOracle& oracle) {
  if (subset.empty()) return false;
  Length best(0);
  bool first = true;
  for (std::size_t v : subset) {
    const Length a = abs_value(family.members.at(v).element, oracle).value();
    if (first || a > best) best = a;
    first = false;
  }
  return abs_value(family.sum(subset), oracle) < Extended(best - mu);
}

bool is_mu_relation(const Family& family, Length mu, const SpaceOracle& oracle) {
  std::vector<std::size_t> all(family.size());
  std::iota(all.begin(), all.end(), 0);
  return is_mu_relation(family, all, mu, oracle);
}

std::vector<ComponentVerdict> component_relations(const ExtremalGraph& graph, const Family& family, Length mu,
                                                  const SpaceOracle& oracle) {
  if (!is_mu_relation(family, mu, oracle)) {
    throw Error(ErrorCode::Precondition, "component_relations: the family is not a " + to_string(mu) + "-relation");
  }
  std::vector<ComponentVerdict> out;
  for (const auto& comp : graph.components) {
    const bool top = std::any_of(comp.begin(), comp.end(), [&](std::size_t v) { return graph.member_abs[v] == graph.d; });
    if (!top) continue;
    out.push_back({comp, is_mu_relation(family, comp, mu, oracle)});
  }
  return out;
}

namespace {

void extend_path(const std::vector<std::vector<std::size_t>>& adj, std::size_t v, std::vector<bool>& used,
                 std::size_t length, std::size_t& best) {
  best = std::max(best, length);
  for (std::size_t w : adj[v]) {
    if (used[w]) continue;
    used[w] = true;
    extend_path(adj, w, used, length + 1, best);
    used[w] = false;
  }
}

std::vector<std::vector<std::size_t>> adjacency(const ExtremalGraph& graph) {
  std::size_t n = 0;
  for (std::size_t v : graph.vertices) n = std::max(n, v + 1);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t v : graph.vertices) adj[v] = graph.neighbors(v);
  return adj;
}

}  // namespace

std::size_t longest_embedded_path(const ExtremalGraph& graph) {
  const auto adj = adjacency(graph);
  std::size_t best = 0;
  std::vector<bool> used(adj.size(), false);
  for (std::size_t v : graph.vertices) {
    used[v] = true;
    extend_path(adj, v, used, 0, best);
    used[v] = false;
  }
  return best;
}

std::size_t component_diameter(const ExtremalGraph& graph, std::span<const std::size_t> component) {
  const auto adj = adjacency(graph);
  std::size_t best = 0;
  for (std::size_t s : component) {
    std::vector<std::ptrdiff_t> dist(adj.size(), -1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      best = std::max(best, static_cast<std::size_t>(dist[x]));
      for (std::size_t y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return best;
}

std::string export_graph(const ExtremalGraph& graph, const Family& family, Length delta) {
  std::ostringstream os;
  os << "vertices " << family.size() << " delta " << to_fraction_string(delta) << "\n";
  for (std::size_t v : graph.vertices) {
    os << "# " << v << " " << family.members[v].color << " " << to_string(graph.color_radius[family.members[v].color])
       << " " << to_string(graph.member_abs[v]) << "\n";
  }
  for (const auto& e : graph.edges) os << e.v << " " << e.w << "\n";
  return os.str();
}

}  // namespace geuclid
