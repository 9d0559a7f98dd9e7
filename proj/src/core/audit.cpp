#include "audit.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "extremal_graph.hpp"
#include "random.hpp"
#include "reduction.hpp"

namespace geuclid {

namespace {

enum class Outcome { Pass, Fail, Skip };

struct TrialResult {
  Outcome outcome = Outcome::Pass;
  std::string counterexample;
};

TrialResult pass() { return {}; }
TrialResult skip() { return {Outcome::Skip, {}}; }
TrialResult fail(std::string why) { return {Outcome::Fail, std::move(why)}; }

struct Env {
  const SpaceOracle* oracle = nullptr;
  Length delta{0};
  Length four_point{0};  // the product-inequality constant, at most delta
  Length displacement{0};
  bool tree = true;
  int rank = 1;
  std::vector<Point> pool;  // certified points of a finite oracle
  std::vector<Point> vertices;  // the vertices among them
  int point_radius = 4;     // tree samples: words up to this length
  int element_radius = 3;   // supports of random ring elements
  int family_radius = 1;    // supports inside random relations
};

// ---------------------------------------------------------------------------
// Sampling and small geometric helpers.

Point random_point(const Env& env, Rng& rng) {
  if (!env.tree) return env.pool[rng.below(env.pool.size())];
  Word w = random_word_up_to(rng, env.rank, env.point_radius);
  if (rng.below(4) == 0) {
    const auto nb = env.oracle->neighbors(w);
    return Point::midpoint(w, nb[rng.below(nb.size())]);
  }
  return Point::vertex(std::move(w));
}

// Vertex sets: their diameters are integers, so diameter midpoints exist on
// the half-integer grid the oracles represent.
std::vector<Point> random_set(const Env& env, Rng& rng, int lo, int hi) {
  const auto size = rng.between(lo, hi);
  std::vector<Point> xs;
  for (std::int64_t i = 0; i < size; ++i) {
    if (env.tree) {
      xs.push_back(Point::vertex(random_word_up_to(rng, env.rank, env.point_radius)));
    } else {
      xs.push_back(env.vertices[rng.below(env.vertices.size())]);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

Domain random_domain(Rng& rng) {
  switch (rng.below(3)) {
    case 0: return Domain::finite_field(2);
    case 1: return Domain::finite_field(5);
    default: return Domain::rationals();
  }
}

std::string show(std::span<const Point> xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].to_string();
  return out + "}";
}

Length spread(const SpaceOracle& o, const Point& c, std::span<const Point> xs) {
  Length r(0);
  for (const auto& x : xs) r = std::max(r, o.dist(c, x));
  return r;
}

Length norm_of(const SpaceOracle& o, std::span<const Point> xs) {
  Length r(0);
  for (const auto& x : xs) r = std::max(r, o.norm(x));
  return r;
}

bool all_certified(const SpaceOracle& o, std::span<const Point> xs) {
  return std::all_of(xs.begin(), xs.end(), [&](const Point& p) { return o.certified(p); });
}

// Candidate centers: the half-integer points of all geodesics between points
// of X (which contain every optimal center in a tree), or the whole certified
// region of a finite oracle.
std::vector<Point> candidate_centers(const Env& env, std::span<const Point> xs) {
  if (!env.tree) return env.pool;
  std::vector<Point> out(xs.begin(), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const Length L = env.oracle->dist(xs[i], xs[j]);
      for (Length t(0); t <= L; t += Length(1, 2)) out.push_back(env.oracle->point_at(xs[i], xs[j], t));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Every vertex and edge midpoint within distance r of c.
std::vector<Point> points_within(const Env& env, const Point& c, Length r) {
  const auto& o = *env.oracle;
  std::vector<Point> out;
  if (!env.tree) {
    for (const auto& p : env.pool) {
      if (o.dist(c, p) <= r) out.push_back(p);
    }
    return out;
  }
  const int steps = boost::rational_cast<int>(r) + 1;
  std::set<Word> seen{c.a};
  std::vector<Word> frontier{c.a};
  for (int s = 0; s < steps; ++s) {
    std::vector<Word> next;
    for (const auto& v : frontier) {
      for (auto& w : o.neighbors(v)) {
        if (seen.insert(w).second) next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  std::set<Point> pts;
  for (const auto& v : seen) {
    pts.insert(Point::vertex(v));
    for (const auto& w : o.neighbors(v)) {
      if (seen.count(w) != 0) pts.insert(Point::midpoint(v, w));
    }
  }
  for (const auto& p : pts) {
    if (o.dist(c, p) <= r) out.push_back(p);
  }
  return out;
}

// Greedy removal of points while the failure persists.
std::vector<Point> shrink(std::vector<Point> xs, const std::function<bool(std::span<const Point>)>& fails,
                          std::size_t min_size) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < xs.size() && xs.size() > min_size; ++i) {
      auto ys = xs;
      ys.erase(ys.begin() + static_cast<std::ptrdiff_t>(i));
      bool still = false;
      try {
        still = fails(ys);
      } catch (const Error&) {
        still = false;
      }
      if (still) {
        xs = std::move(ys);
        changed = true;
        break;
      }
    }
  }
  return xs;
}

// A point-set check: empty string means the invariant held (or was vacuous).
using SetCheck = std::function<std::string(const Env&, std::span<const Point>)>;

TrialResult run_set_check(const Env& env, std::vector<Point> xs, const SetCheck& check, std::size_t min_size) {
  const std::string why = check(env, xs);
  if (why.empty()) return pass();
  if (why == "skip") return skip();
  const auto fails = [&](std::span<const Point> ys) {
    const auto w = check(env, ys);
    return !w.empty() && w != "skip";
  };
  const auto small = shrink(std::move(xs), fails, min_size);
  return fail("X=" + show(small) + ": " + check(env, small));
}

struct CenterFacts {
  CenterResult eps;
  Length rho;     // max distance from eps.center to X
  Length r_star;  // least such distance over the candidate centers
  std::vector<Point> exact_centers;
};

// nullopt when the center leaves the certified region.
std::optional<CenterFacts> center_facts(const Env& env, std::span<const Point> xs) {
  const auto& o = *env.oracle;
  CenterFacts f;
  f.eps = eps_center(o, xs);
  if (!o.certified(f.eps.center)) return std::nullopt;
  f.rho = spread(o, f.eps.center, xs);
  f.r_star = f.rho;
  f.exact_centers = {f.eps.center};
  for (const auto& c : candidate_centers(env, xs)) {
    const Length s = spread(o, c, xs);
    if (s < f.r_star) {
      f.r_star = s;
      f.exact_centers = {c};
    } else if (s == f.r_star && c != f.eps.center) {
      f.exact_centers.push_back(c);
    }
  }
  if (f.rho != f.r_star) {
    f.exact_centers.erase(std::remove(f.exact_centers.begin(), f.exact_centers.end(), f.eps.center),
                          f.exact_centers.end());
  }
  return f;
}

// ---------------------------------------------------------------------------
// Space invariants.

TrialResult check_metric(const Env& env, Rng& rng) {
  const auto& o = *env.oracle;
  const Point p = random_point(env, rng), q = random_point(env, rng), r = random_point(env, rng);
  std::string why;
  if (o.dist(p, p) != Length(0)) why = "d(p,p) != 0";
  else if (o.dist(p, q) != o.dist(q, p)) why = "d(p,q) != d(q,p)";
  else if (p != q && o.dist(p, q) <= Length(0)) why = "distinct points at distance 0";
  else if (o.dist(p, r) > o.dist(p, q) + o.dist(q, r)) why = "d(p,r) > d(p,q) + d(q,r)";
  if (!why.empty()) return fail("p=" + p.to_string() + " q=" + q.to_string() + " r=" + r.to_string() + ": " + why);

  const Word g = random_word(rng, env.rank, static_cast<int>(rng.between(1, 2)));
  const Point gp = p.is_vertex() ? Point::vertex(g * p.a) : Point::midpoint(g * p.a, g * p.b);
  const Point gq = q.is_vertex() ? Point::vertex(g * q.a) : Point::midpoint(g * q.a, g * q.b);
  if (!o.certified(gp) || !o.certified(gq)) return pass();
  if (o.dist(gp, gq) != o.dist(p, q)) {
    return fail("g=" + g.to_string() + " p=" + p.to_string() + " q=" + q.to_string() + ": d(gp,gq) != d(p,q)");
  }
  return pass();
}

TrialResult check_gromov_product(const Env& env, Rng& rng) {
  const auto& o = *env.oracle;
  const Point p = random_point(env, rng), q = random_point(env, rng), r = random_point(env, rng);
  const Length gp = gromov_product(o, p, q, r);
  if (gp < Length(0) || gp > std::min(o.dist(p, r), o.dist(q, r))) {
    return fail("p=" + p.to_string() + " q=" + q.to_string() + " base=" + r.to_string() + ": <p,q> = " + to_string(gp) +
                " outside [0, min(d(p,base), d(q,base))]");
  }
  if (gromov_product(o, p, p, o.origin()) != o.norm(p)) return fail("p=" + p.to_string() + ": <p,p>_o != |p|");
  return pass();
}

TrialResult check_four_point(const Env& env, Rng& rng) {
  auto xs = random_set(env, rng, 4, 7);
  const SetCheck check = [](const Env& e, std::span<const Point> ys) -> std::string {
    const Length fp = four_point_delta(*e.oracle, ys).delta;
    if (fp > e.four_point) {
      return "four-point defect " + to_string(fp) + " exceeds the oracle's constant " + to_string(e.four_point);
    }
    if (e.tree && fp != Length(0)) return "tree sample with defect " + to_string(fp);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      std::vector<Point> sub(ys.begin(), ys.end());
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
      if (four_point_delta(*e.oracle, sub).delta > fp) return "defect grows when dropping " + ys[i].to_string();
    }
    return {};
  };
  return run_set_check(env, std::move(xs), check, 1);
}

TrialResult check_center_fellow_travel(const Env& env, Rng& rng) {
  const SetCheck check = [](const Env& e, std::span<const Point> ys) -> std::string {
    const auto& o = *e.oracle;
    const auto c = eps_center(o, ys);
    if (!o.certified(c.center)) return "skip";
    const Length nx = norm_of(o, ys);
    const Length nc = o.norm(c.center);
    for (const auto& p : ys) {
      if (o.dist(c.center, p) > c.radius_bound) return p.to_string() + " lies outside the center's radius bound";
      const Length g = gromov_product(o, p, c.center, o.origin());
      if (g > nc || g < (nx + o.norm(p)) / 2 - c.radius_bound) {
        return "c=" + c.center.to_string() + " p=" + p.to_string() + ": <p,c> = " + to_string(g);
      }
    }
    return {};
  };
  return run_set_check(env, random_set(env, rng, 1, 6), check, 1);
}

TrialResult check_diameter_vs_radius(const Env& env, Rng& rng) {
  const SetCheck check = [](const Env& e, std::span<const Point> ys) -> std::string {
    const auto f = center_facts(e, ys);
    if (!f) return "skip";
    const Length half = f->eps.diameter / 2;
    if (f->r_star < half || f->r_star > half + e.delta) {
      return "radius " + to_string(f->r_star) + " outside [diam/2, diam/2 + delta] with diam " + to_string(f->eps.diameter);
    }
    return {};
  };
  return run_set_check(env, random_set(env, rng, 1, 6), check, 1);
}

TrialResult check_center_vs_midpoint(const Env& env, Rng& rng) {
  const SetCheck check = [](const Env& e, std::span<const Point> ys) -> std::string {
    const auto& o = *e.oracle;
    const auto f = center_facts(e, ys);
    if (!f) return "skip";
    std::vector<std::pair<Point, Length>> centers;  // (c, eps)
    centers.emplace_back(f->eps.center, f->rho - f->r_star);
    for (const auto& c : f->exact_centers) centers.emplace_back(c, Length(0));
    const Length diam = f->eps.diameter;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        if (i == j || o.dist(ys[i], ys[j]) != diam) continue;
        const Point m = o.point_at(ys[i], ys[j], diam / 2);
        if (!o.certified(m)) continue;
        for (const auto& [c, eps] : centers) {
          if (o.dist(c, m) > eps + 2 * e.delta) {
            return "center " + c.to_string() + " (eps " + to_string(eps) + ") is " + to_string(o.dist(c, m)) +
                   " from the midpoint " + m.to_string();
          }
        }
      }
    }
    return {};
  };
  return run_set_check(env, random_set(env, rng, 1, 6), check, 1);
}

TrialResult check_free_action(const Env& env, Rng& rng) {
  if (!(env.displacement > 3 * env.delta)) return skip();
  const auto& o = *env.oracle;
  const auto xs = random_set(env, rng, 1, 5);
  const Word g = random_word(rng, env.rank, static_cast<int>(rng.between(1, 3)));
  std::vector<Point> gx;
  for (const auto& p : xs) {
    Point q = p.is_vertex() ? Point::vertex(g * p.a) : Point::midpoint(g * p.a, g * p.b);
    if (!o.contains(q)) return skip();
    gx.push_back(std::move(q));
  }
  std::sort(gx.begin(), gx.end());
  if (gx == xs) return fail("g=" + g.to_string() + " fixes X=" + show(xs));
  return pass();
}

TrialResult check_center_norm(const Env& env, Rng& rng) {
  const SetCheck check = [](const Env& e, std::span<const Point> ys) -> std::string {
    const auto& o = *e.oracle;
    const auto f = center_facts(e, ys);
    if (!f) return "skip";
    const Length nx = norm_of(o, ys);
    std::vector<std::pair<Point, Length>> centers;
    centers.emplace_back(f->eps.center, f->rho - f->r_star);
    for (const auto& c : f->exact_centers) centers.emplace_back(c, Length(0));
    for (const auto& [c, eps] : centers) {
      const Length nc = o.norm(c);
      if (nc < nx - f->r_star - eps || nc > nx - f->r_star + 4 * e.delta + eps) {
        return "center " + c.to_string() + " has norm " + to_string(nc) + " with |X| = " + to_string(nx) +
               ", r = " + to_string(f->r_star) + ", eps = " + to_string(eps);
      }
    }
    return {};
  };
  return run_set_check(env, random_set(env, rng, 1, 6), check, 1);
}

TrialResult check_ball_intersection(const Env& env, Rng& rng) {
  const auto& o = *env.oracle;
  const Point c1 = random_point(env, rng);
  const Point c2 = o.point_at(c1, random_point(env, rng), Length(rng.between(0, 6), 2));
  if (!o.certified(c2)) return skip();
  const Length r1(rng.between(0, 6), 2), r2(rng.between(0, 6), 2);
  std::vector<Point> both;
  for (const auto& p : points_within(env, c1, r1)) {
    if (o.dist(c2, p) <= r2) both.push_back(p);
  }
  if (both.empty()) return pass();
  const Length bound = r1 + r2 - o.dist(c1, c2) + 2 * env.delta;
  for (std::size_t i = 0; i < both.size(); ++i) {
    for (std::size_t j = i + 1; j < both.size(); ++j) {
      if (o.dist(both[i], both[j]) > bound) {
        return fail("B(" + c1.to_string() + ", " + to_string(r1) + ") meets B(" + c2.to_string() + ", " + to_string(r2) +
                    ") in " + both[i].to_string() + " and " + both[j].to_string() + " at distance " +
                    to_string(o.dist(both[i], both[j])) + " > " + to_string(bound));
      }
    }
  }
  return pass();
}

TrialResult check_gromov_chain(const Env& env, Rng& rng) {
  const auto& o = *env.oracle;
  const int k = static_cast<int>(rng.between(1, 3));
  std::vector<Point> xs;
  for (int i = 0; i <= (1 << k); ++i) xs.push_back(random_point(env, rng));
  const Point w = random_point(env, rng);
  Length least = gromov_product(o, xs[0], xs[1], w);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) least = std::min(least, gromov_product(o, xs[i], xs[i + 1], w));
  const Length ends = gromov_product(o, xs.front(), xs.back(), w);
  if (ends < least - k * env.four_point) {
    return fail("chain " + show(xs) + " base " + w.to_string() + ": <x_0, x_last> = " + to_string(ends) +
                " < " + to_string(least) + " - " + std::to_string(k) + " * " + to_string(env.four_point));
  }
  return pass();
}

// ---------------------------------------------------------------------------
// Filtration laws.

bool le_sum(const Extended& a, const Extended& x, const Extended& y) {
  if (!a.is_finite()) return true;
  if (!x.is_finite() || !y.is_finite()) return false;
  return a.value() <= x.value() + y.value();
}

TrialResult check_filtration(const Env& env, Rng& rng) {
  const Domain d = random_domain(rng);
  const RingElement x = random_element(rng, d, env.rank, 4, env.element_radius);
  const RingElement y = random_element(rng, d, env.rank, 4, env.element_radius);
  const std::string inst = "x=" + x.to_string() + " y=" + y.to_string() + " over " + d.name();
  if (!((x - y).word_length() <= std::max(x.word_length(), y.word_length()))) return fail(inst + ": |x-y| > max");
  if (!le_sum((x * y).word_length(), x.word_length(), y.word_length())) return fail(inst + ": |xy| > |x|+|y|");
  const auto& o = *env.oracle;
  // Geometric version on the orbit of the basepoint.
  if (!(abs_value(x - y, o) <= std::max(abs_value(x, o), abs_value(y, o)))) return fail(inst + ": geometric |x-y| > max");
  if (!le_sum(abs_value(x * y, o), abs_value(x, o), abs_value(y, o))) return fail(inst + ": geometric |xy| > |x|+|y|");
  return pass();
}

TrialResult check_positive_monoid(const Env& env, Rng& rng) {
  const Domain d = random_domain(rng);
  const RingElement x = random_positive_element(rng, d, env.rank, 4, env.element_radius);
  const RingElement y = random_positive_element(rng, d, env.rank, 4, env.element_radius);
  const Extended xy = (x * y).word_length();
  if (!xy.is_finite() || xy.value() != x.word_length().value() + y.word_length().value()) {
    return fail("x=" + x.to_string() + " y=" + y.to_string() + " over " + d.name() + ": |xy| != |x|+|y|");
  }
  return pass();
}

// ---------------------------------------------------------------------------
// Extremal-graph invariants on families from random relations.

struct FamilyInstance {
  std::vector<RingElement> xi;
  std::vector<RingElement> alpha;
  std::optional<RingElement> extra;
  Family family;
  Length mu{0};

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    os << "xi=(";
    for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? "; " : "") << xi[i].to_string();
    os << ") alpha=(";
    for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "; " : "") << alpha[i].to_string();
    os << ")";
    if (extra) os << " extra=" << extra->to_string();
    os << " mu=" << to_string(mu);
    return os.str();
  }
};

FamilyInstance random_family(const Env& env, Rng& rng) {
  FamilyInstance f;
  const Domain d = random_domain(rng);
  random_relation(rng, d, env.rank, static_cast<int>(rng.between(2, 3)), env.family_radius, f.xi, f.alpha);
  f.family = expand_relation(f.xi, f.alpha);
  if (rng.coin()) {
    std::vector<RingElement> elements;
    for (const auto& m : f.family.members) elements.push_back(m.element);
    f.extra = RingElement::monomial(random_nonzero_scalar(rng, d), random_word_up_to(rng, env.rank, 1));
    elements.push_back(*f.extra);
    f.family = Family::from_elements(elements);
  }
  f.mu = Length(rng.between(0, 2), 2);
  return f;
}

// The graph recomputed from its definition, independently of build_gamma.
struct PlainGraph {
  Length d{0};
  std::vector<bool> vertex;
  std::vector<std::set<std::size_t>> adj;
  std::vector<std::vector<std::size_t>> components;
};

PlainGraph plain_graph(const Env& env, const Family& fam, Length mu) {
  const auto& o = *env.oracle;
  PlainGraph g;
  const std::size_t N = fam.size();
  std::vector<std::set<Point>> extremal(N);
  std::vector<Length> norms(N);
  for (std::size_t v = 0; v < N; ++v) {
    for (const auto& p : support_points(fam.members[v].element)) norms[v] = std::max(norms[v], o.norm(p));
    g.d = std::max(g.d, norms[v]);
  }
  g.vertex.assign(N, false);
  g.adj.resize(N);
  for (std::size_t v = 0; v < N; ++v) {
    for (const auto& p : support_points(fam.members[v].element)) {
      if (o.norm(p) >= g.d - mu) extremal[v].insert(p);
    }
    g.vertex[v] = !extremal[v].empty();
  }
  for (std::size_t v = 0; v < N; ++v) {
    for (std::size_t w = v + 1; w < N; ++w) {
      for (const auto& p : extremal[v]) {
        if (extremal[w].count(p) != 0) {
          g.adj[v].insert(w);
          g.adj[w].insert(v);
          break;
        }
      }
    }
  }
  std::vector<bool> seen(N, false);
  for (std::size_t v = 0; v < N; ++v) {
    if (!g.vertex[v] || seen[v]) continue;
    std::vector<std::size_t> comp{v}, stack{v};
    seen[v] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto w : g.adj[u]) {
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    g.components.push_back(std::move(comp));
  }
  return g;
}

std::size_t longest_simple_path(const PlainGraph& g) {
  std::size_t best = 0;
  std::vector<bool> on(g.adj.size(), false);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t len) {
    best = std::max(best, len);
    on[v] = true;
    for (const auto w : g.adj[v]) {
      if (!on[w]) dfs(w, len + 1);
    }
    on[v] = false;
  };
  for (std::size_t v = 0; v < g.adj.size(); ++v) {
    if (g.vertex[v]) dfs(v, 0);
  }
  return best;
}

std::size_t graph_diameter(const PlainGraph& g, const std::vector<std::size_t>& comp) {
  std::size_t best = 0;
  for (const auto s : comp) {
    std::map<std::size_t, std::size_t> dist{{s, 0}};
    std::vector<std::size_t> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (const auto w : g.adj[queue[h]]) {
        if (dist.emplace(w, dist[queue[h]] + 1).second) queue.push_back(w);
      }
    }
    for (const auto& [v, dv] : dist) best = std::max(best, dv);
  }
  return best;
}

// Facts shared by the graph invariants; nullopt when the instance leaves the
// certified region.
struct GraphFacts {
  FamilyInstance inst;
  ExtremalGraph graph;
  PlainGraph plain;
  std::size_t n = 0;
  std::vector<Length> radius;  // per color: diam/2 of its support
  Length eps{0};               // centers are eps-centers for these radii
  Length r1{0};
};

std::optional<GraphFacts> graph_facts(const Env& env, Rng& rng) {
  GraphFacts f;
  f.inst = random_family(env, rng);
  if (f.inst.family.size() == 0) return std::nullopt;
  f.graph = build_gamma(f.inst.family, f.inst.mu, *env.oracle);
  if (!all_certified(*env.oracle, f.graph.centers)) return std::nullopt;
  f.plain = plain_graph(env, f.inst.family, f.inst.mu);
  f.n = f.inst.family.color_count();
  f.eps = env.delta;
  for (const auto r : f.graph.color_radius) {
    f.radius.push_back(r - env.delta);
    f.r1 = std::max(f.r1, r - env.delta);
  }
  return f;
}

// Same-colored members must have centers farther apart than 2(r_1 - r_i) * weight
// + 2 mu + (10 + 2n) delta + 4 eps.
bool separated(const Env& env, const GraphFacts& f, std::size_t color, bool weighted) {
  const auto& fam = f.inst.family;
  const Length slack = 2 * f.inst.mu + Length(10 + 2 * static_cast<std::int64_t>(f.n)) * env.delta + 4 * f.eps +
                       (weighted ? 2 * (f.r1 - f.radius[color]) : Length(0));
  for (std::size_t v = 0; v < fam.size(); ++v) {
    for (std::size_t w = v + 1; w < fam.size(); ++w) {
      if (fam.members[v].color != color || fam.members[w].color != color) continue;
      if (!(env.oracle->dist(f.graph.centers[v], f.graph.centers[w]) > slack)) return false;
    }
  }
  return true;
}

bool path_hypothesis(const Env& env, const GraphFacts& f) {
  for (std::size_t c = 0; c < f.n; ++c) {
    if (!separated(env, f, c, false)) return false;
  }
  return true;
}

std::string graph_mismatch(const Env& env, const GraphFacts& f) {
  const auto& fam = f.inst.family;
  for (std::size_t v = 0; v < fam.size(); ++v) {
    if (f.graph.is_vertex(v) != f.plain.vertex[v]) return "vertex set differs at member " + std::to_string(v);
    for (std::size_t w = v + 1; w < fam.size(); ++w) {
      if (f.graph.adjacent(v, w) != (f.plain.adj[v].count(w) != 0)) {
        return "adjacency differs at members " + std::to_string(v) + ", " + std::to_string(w);
      }
    }
    const auto pts = support_points(fam.members[v].element);
    const Length bound = f.graph.color_radius[fam.members[v].color];
    if (spread(*env.oracle, f.graph.centers[v], pts) > bound) {
      return "center of member " + std::to_string(v) + " misses its radius bound";
    }
  }
  return {};
}

TrialResult check_adjacent_centers(const Env& env, Rng& rng) {
  const auto f = graph_facts(env, rng);
  if (!f) return skip();
  if (auto m = graph_mismatch(env, *f); !m.empty()) return fail(f->inst.describe() + ": " + m);
  const auto& fam = f->inst.family;
  for (std::size_t v = 0; v < fam.size(); ++v) {
    for (const auto w : f->plain.adj[v]) {
      if (w < v) continue;
      const Length rv = f->radius[fam.members[v].color], rw = f->radius[fam.members[w].color];
      const Length gap = rv > rw ? rv - rw : rw - rv;
      const Length bound = gap + 2 * f->inst.mu + 10 * env.delta + 4 * f->eps;
      const Length dc = env.oracle->dist(f->graph.centers[v], f->graph.centers[w]);
      if (dc > bound) {
        return fail(f->inst.describe() + ": adjacent members " + std::to_string(v) + ", " + std::to_string(w) +
                    " have centers " + to_string(dc) + " apart, bound " + to_string(bound));
      }
    }
  }
  return pass();
}

TrialResult check_path_bound(const Env& env, Rng& rng) {
  const auto f = graph_facts(env, rng);
  if (!f || !path_hypothesis(env, *f)) return skip();
  const std::size_t longest = longest_simple_path(f->plain);
  const std::size_t bound = (std::size_t{1} << f->n) - 2;
  if (longest > bound || longest_embedded_path(f->graph) != longest) {
    return fail(f->inst.describe() + ": embedded path of length " + std::to_string(longest) + " with " +
                std::to_string(f->n) + " colors");
  }
  return pass();
}

TrialResult check_component_diameter(const Env& env, Rng& rng) {
  const auto f = graph_facts(env, rng);
  if (!f) return skip();
  const Length threshold = 2 * f->inst.mu + Length(10 + 2 * static_cast<std::int64_t>(f->n)) * env.delta;
  if (!(env.displacement > threshold) && !path_hypothesis(env, *f)) return skip();
  const std::size_t bound = (std::size_t{1} << f->n) - 2;
  for (const auto& comp : f->plain.components) {
    const auto d = graph_diameter(f->plain, comp);
    if (d > bound) return fail(f->inst.describe() + ": component of diameter " + std::to_string(d));
  }
  return pass();
}

TrialResult check_color_uniqueness(const Env& env, Rng& rng) {
  const auto f = graph_facts(env, rng);
  if (!f || !path_hypothesis(env, *f)) return skip();
  bool tested = false;
  const auto& fam = f->inst.family;
  for (std::size_t c = 0; c < f->n; ++c) {
    if (!separated(env, *f, c, true)) continue;
    tested = true;
    for (const auto& comp : f->plain.components) {
      std::size_t count = 0;
      for (const auto v : comp) count += fam.members[v].color == c ? 1 : 0;
      if (count > 1) {
        return fail(f->inst.describe() + ": color " + std::to_string(c) + " appears " + std::to_string(count) +
                    " times in one component");
      }
    }
  }
  return tested ? pass() : skip();
}

TrialResult check_relation_components(const Env& env, Rng& rng) {
  const auto f = graph_facts(env, rng);
  if (!f) return skip();
  const auto& o = *env.oracle;
  const auto& fam = f->inst.family;
  const Length mu = f->inst.mu;
  const Length d = f->plain.d;
  if (!(abs_value(fam.sum(), o) < Extended(d - mu))) return skip();
  for (const auto& comp : f->plain.components) {
    Length top(0);
    bool touches = false;
    for (const auto v : comp) {
      const Extended a = abs_value(fam.members[v].element, o);
      top = std::max(top, a.value());
      touches = touches || a.value() == d;
    }
    if (!touches) continue;
    if (!(abs_value(fam.sum(comp), o) < Extended(top - mu))) {
      return fail(f->inst.describe() + ": a component through an extremal point is not a relation on its own");
    }
  }
  return pass();
}

TrialResult check_reduce_step(const Env& env, Rng& rng) {
  const Domain d = random_domain(rng);
  std::vector<RingElement> xi, alpha;
  random_relation(rng, d, env.rank, static_cast<int>(rng.between(2, 3)), env.family_radius, xi, alpha);
  std::ostringstream inst;
  inst << "xi=(";
  for (std::size_t i = 0; i < xi.size(); ++i) inst << (i ? "; " : "") << xi[i].to_string();
  inst << ") alpha=(";
  for (std::size_t i = 0; i < alpha.size(); ++i) inst << (i ? "; " : "") << alpha[i].to_string();
  inst << ") over " << d.name();

  ReductionOptions opts;
  opts.unsafe = !env.tree;
  const ReductionContext ctx(*env.oracle, opts);
  ReductionStep step;
  try {
    step = reduce_step(xi, alpha, ctx);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HypothesisNotMet || e.code() == ErrorCode::OutOfDomain) return skip();
    return fail(inst.str() + ": " + e.what());
  }
  auto after = xi;
  step.log.replay(after);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (i != step.target && !(after[i] == xi[i])) return fail(inst.str() + ": entry " + std::to_string(i) + " changed");
  }
  if (!(after[step.target] == step.result)) return fail(inst.str() + ": logged operation disagrees with the result");
  auto beta = alpha;
  transform_coefficients(step.log, beta);
  if (!dot(beta, after).is_zero()) return fail(inst.str() + ": relation lost after the step");
  const auto& o = *env.oracle;
  const Extended before = diam(xi[step.target], o);
  const Extended now = diam(step.result, o);
  if (!(now < before - env.delta)) {
    return fail(inst.str() + ": diam " + now.to_string() + " not below " + before.to_string() + " - delta");
  }
  return pass();
}

struct InvariantDef {
  const char* name;
  const char* statement;
  TrialResult (*run)(const Env&, Rng&);
};

const InvariantDef kInvariants[] = {
    {"metric-axioms", "dist is a metric and the action is isometric", check_metric},
    {"gromov-product-bounds", "0 <= <p,q>_r <= min(|p-r|, |q-r|) and <p,p>_o = |p|", check_gromov_product},
    {"four-point-delta", "sample defects stay below the oracle delta and shrink under inclusion", check_four_point},
    {"center-fellow-travel", "|c| >= <p,c> >= (|X|+|p|)/2 - r - eps for p in X", check_center_fellow_travel},
    {"diameter-vs-radius", "diam/2 <= radius <= diam/2 + delta", check_diameter_vs_radius},
    {"center-vs-midpoint", "|c - m| <= eps + 2 delta for diameter midpoints m", check_center_vs_midpoint},
    {"free-action-on-finite-sets", "gX = X forces g = 1 when displacement > 3 delta", check_free_action},
    {"center-norm-bounds", "|X| - r - eps <= |c| <= |X| - r + 4 delta + eps", check_center_norm},
    {"ball-intersection-diameter", "diam(B(c1,r1) n B(c2,r2)) <= r1 + r2 - |c1-c2| + 2 delta", check_ball_intersection},
    {"gromov-product-chain", "<x_0, x_2^k> >= min_i <x_i, x_i+1> - k delta (four-point delta)", check_gromov_chain},
    {"filtration-laws", "|x-y| <= max(|x|,|y|) and |xy| <= |x|+|y|", check_filtration},
    {"positive-monoid-additivity", "|xy| = |x|+|y| on positive words", check_positive_monoid},
    {"adjacent-center-distance", "adjacent vertices: |c_v-c_w| <= |r_v-r_w| + 2 mu + 10 delta + 4 eps",
     check_adjacent_centers},
    {"embedded-path-bound", "embedded paths have length at most 2^n - 2", check_path_bound},
    {"component-diameter-bound", "components have diameter at most 2^n - 2", check_component_diameter},
    {"color-uniqueness", "a well-separated color appears at most once per component", check_color_uniqueness},
    {"relation-components", "components through extremal points carry their own mu-relation",
     check_relation_components},
    {"reduce-step-postcondition", "diam(new entry) < diam(replaced entry) - delta, relation preserved",
     check_reduce_step},
};

}  // namespace

std::size_t AuditReport::total_failures() const {
  std::size_t n = 0;
  for (const auto& t : invariants) n += t.failures;
  return n;
}

std::vector<std::string> audit_invariant_names() {
  std::vector<std::string> out;
  for (const auto& inv : kInvariants) out.emplace_back(inv.name);
  return out;
}

AuditReport audit_lemmas(const SpaceOracle& oracle, const AuditOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::Usage, "audit needs at least one trial");
  Env env;
  env.oracle = &oracle;
  env.delta = oracle.delta();
  env.tree = oracle.is_tree();
  env.rank = oracle.rank();
  env.displacement = min_displacement(oracle, 2).value;
  if (const auto* ball = dynamic_cast<const CayleyBallOracle*>(&oracle)) env.four_point = ball->four_point_constant();
  if (!env.tree) {
    env.pool = oracle.certified_points();
    for (const auto& p : env.pool) {
      if (p.is_vertex()) env.vertices.push_back(p);
    }
    env.element_radius = 1;
  }

  constexpr std::size_t kCount = std::size(kInvariants);
  std::vector<std::vector<TrialResult>> results(kCount, std::vector<TrialResult>(options.trials));
  std::atomic<std::size_t> next{0};
  const std::size_t total = kCount * options.trials;
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t k = job / options.trials;
      const std::size_t t = job % options.trials;
      Rng rng(options.seed, k, t);
      TrialResult r;
      try {
        r = kInvariants[k].run(env, rng);
      } catch (const Error& e) {
        r = e.code() == ErrorCode::OutOfDomain ? skip() : fail(std::string("unexpected error: ") + e.what());
      }
      results[k][t] = std::move(r);
    }
  };
  const unsigned threads = std::max(1U, options.threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  AuditReport report;
  report.oracle = oracle.description();
  report.delta = env.delta;
  report.displacement = env.displacement;
  report.trials = options.trials;
  report.seed = options.seed;
  for (std::size_t k = 0; k < kCount; ++k) {
    InvariantTally tally;
    tally.name = kInvariants[k].name;
    tally.statement = kInvariants[k].statement;
    tally.trials = options.trials;
    for (std::size_t t = 0; t < options.trials; ++t) {
      const auto& r = results[k][t];
      switch (r.outcome) {
        case Outcome::Pass: ++tally.passes; break;
        case Outcome::Skip: ++tally.skipped; break;
        case Outcome::Fail:
          ++tally.failures;
          if (tally.counterexamples.size() < 3) {
            tally.counterexamples.push_back("trial " + std::to_string(t) + ": " + r.counterexample);
          }
          break;
      }
    }
    report.invariants.push_back(std::move(tally));
  }
  return report;
}

}  // namespace geuclid
