#include "reduction.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "error.hpp"
#include "linalg.hpp"

namespace geuclid {

ReductionConstants ReductionConstants::make(Length delta, int n) {
  if (n < 0) throw Error(ErrorCode::Precondition, "negative color count");
  ReductionConstants c;
  c.delta = delta;
  c.n = n;
  c.ladder.push_back(Length(0));
  for (int k = 1; k <= n; ++k) c.ladder.push_back(c.ladder.back() + Length(2 * k + 9) * delta);
  return c;
}

HypothesisReport ReductionContext::hypothesis(int n) const {
  if (oracle_->is_tree()) return check_hypothesis(*oracle_, n);
  if (!displacement_) displacement_ = min_displacement(*oracle_, 2).value;
  return hypothesis_report(n, oracle_->delta(), *displacement_);
}

void ReductionContext::require_hypothesis(int n) const {
  if (options_.unsafe) return;
  const auto r = hypothesis(n);
  if (r.satisfied) return;
  throw Error(ErrorCode::HypothesisNotMet, "displacement " + to_string(r.displacement_lower_bound) +
                                               " does not exceed the threshold " + to_string(r.threshold) +
                                               " for n = " + std::to_string(n) + " (rerun in unsafe mode to proceed)");
}

const char* step_path_name(StepPath path) noexcept {
  switch (path) {
    case StepPath::SameColor: return "same-color";
    case StepPath::Tree: return "tree";
    case StepPath::General: return "general";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Dependence search.

std::optional<std::vector<RingElement>> find_vector_dependence(std::span<const RingVector> vs, int R, int rank) {
  if (vs.empty()) return std::nullopt;
  if (R < 0) throw Error(ErrorCode::Precondition, "search radius must be non-negative");
  const std::size_t m = vs.front().size();
  if (m == 0) throw Error(ErrorCode::Precondition, "empty vectors");
  for (const auto& v : vs) {
    if (v.size() != m) throw Error(ErrorCode::Precondition, "vectors of different lengths");
  }
  const Domain domain = vs.front().front().domain();
  if (!domain.is_field()) throw Error(ErrorCode::Precondition, "dependence search needs a field domain");

  const auto words = words_up_to(rank, R);
  std::vector<std::unordered_map<Word, std::size_t, WordHash>> rows(m);
  std::size_t nrows = 0;
  std::vector<SparseColumn> columns;
  columns.reserve(vs.size() * words.size());
  for (const auto& v : vs) {
    for (const auto& g : words) {
      SparseColumn col;
      for (std::size_t c = 0; c < m; ++c) {
        for (const auto& [w, s] : v[c].terms()) {
          auto [it, fresh] = rows[c].try_emplace(g * w, nrows);
          if (fresh) ++nrows;
          col.emplace_back(it->second, s);
        }
      }
      columns.push_back(std::move(col));
    }
  }
  const auto kernel = first_kernel_vector(domain, nrows, columns);
  if (!kernel) return std::nullopt;
  std::vector<RingElement> alpha;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const Scalar& s = (*kernel)[i * words.size() + k];
      if (!s.is_zero()) terms.emplace_back(words[k], s);
    }
    alpha.push_back(RingElement::from_terms(domain, std::move(terms)));
  }
  return alpha;
}

std::optional<std::vector<RingElement>> find_dependence(std::span<const RingElement> xi, int R, int rank) {
  std::vector<RingVector> vs;
  vs.reserve(xi.size());
  for (const auto& x : xi) vs.push_back(RingVector{x});
  return find_vector_dependence(vs, R, rank);
}

// ---------------------------------------------------------------------------
// One reduction step.

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

Extended max_product_abs(std::span<const RingElement> xi, std::span<const RingElement> alpha, const SpaceOracle& oracle) {
  Extended best;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (alpha[i].is_zero() || xi[i].is_zero()) continue;
    best = std::max(best, abs_value(alpha[i] * xi[i], oracle));
  }
  return best;
}

// (number of nonzero entries, sum of their diameters), compared lexicographically.
std::pair<std::size_t, Length> progress_metric(std::span<const RingElement> xi, const SpaceOracle& oracle) {
  std::pair<std::size_t, Length> m{0, Length(0)};
  for (const auto& x : xi) {
    if (x.is_zero()) continue;
    ++m.first;
    m.second += diam(x, oracle).value();
  }
  return m;
}

struct Choice {
  std::size_t v_star = 0;
  std::vector<std::size_t> S;
};

std::vector<std::size_t> component_containing(const ExtremalGraph& g, std::size_t v) {
  return g.components.at(g.component_of(v));
}

std::size_t color_count_in(const Family& f, std::span<const std::size_t> subset) {
  std::vector<std::size_t> colors;
  for (auto v : subset) colors.push_back(f.members[v].color);
  std::sort(colors.begin(), colors.end());
  return static_cast<std::size_t>(std::unique(colors.begin(), colors.end()) - colors.begin());
}

std::string list(std::span<const std::size_t> xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < xs.size(); ++k) os << (k ? "," : "") << xs[k];
  os << "}";
  return os.str();
}

Choice tree_choice(const Family& family, const SpaceOracle& oracle) {
  const auto g0 = build_gamma(family, Length(0), oracle);
  std::size_t best = g0.vertices.front();
  for (auto v : g0.vertices) {
    if (g0.color_radius[family.members[v].color] > g0.color_radius[family.members[best].color]) best = v;
  }
  Choice c;
  c.v_star = best;
  for (auto v : component_containing(g0, best)) {
    if (v != best) c.S.push_back(v);
  }
  return c;
}

// Checks the center estimates behind the general-delta argument and records
// every violation with its witnesses.
void center_diagnostics(const Family& f, const ExtremalGraph& gn, std::span<const std::size_t> comp, std::size_t v1,
                        const ReductionConstants& k, const SpaceOracle& oracle, std::vector<std::string>& diag) {
  const int n = k.n;
  const Length r1 = gn.color_radius[f.members[v1].color];
  const Length d = gn.d;
  const Length dn = k.at(n);
  const Length dn1 = k.at(n - 1);
  const Point o = oracle.origin();

  for (std::size_t color = 0; color < f.color_count(); ++color) {
    if (gn.color_radius[color] < r1 - dn) continue;
    const auto count = std::count_if(comp.begin(), comp.end(), [&](std::size_t v) { return f.members[v].color == color; });
    if (count != 1) {
      diag.push_back("large color " + std::to_string(color) + " appears " + std::to_string(count) +
                     " times in the component");
    }
  }

  const Length product_bound = d - (dn + dn1) / 2 - r1 - Length(n + 1) * k.delta;
  for (std::size_t a = 0; a < comp.size(); ++a) {
    for (std::size_t b = a + 1; b < comp.size(); ++b) {
      const Length gp = gromov_product(oracle, gn.centers[comp[a]], gn.centers[comp[b]], o);
      if (gp < product_bound) {
        diag.push_back("center product <c_" + std::to_string(comp[a]) + ",c_" + std::to_string(comp[b]) +
                       "> = " + to_string(gp) + " below " + to_string(product_bound) + " (centers " +
                       gn.centers[comp[a]].to_string() + ", " + gn.centers[comp[b]].to_string() + ")");
      }
    }
  }

  const Length t = d - dn1 - r1 - Length(n + 1) * k.delta;
  const Point c_star = oracle.point_at(o, gn.centers[v1], t < Length(0) ? Length(0) : t);
  const Length radius = r1 + Length(n + 3) * k.delta;
  for (auto w : comp) {
    for (const auto& p : support_points(f.members[w].element)) {
      if (oracle.norm(p) >= d - dn) continue;
      const Length dist = oracle.dist(c_star, p);
      if (dist > radius) {
        diag.push_back("support point " + p.to_string() + " of member " + std::to_string(w) + " is " +
                       to_string(dist) + " from c* = " + c_star.to_string() + ", above " + to_string(radius));
      }
    }
  }
}

Choice general_choice(const Family& f, const SpaceOracle& oracle, Length delta, std::vector<std::string>& diag) {
  const int n = static_cast<int>(f.color_count());
  const auto k = ReductionConstants::make(delta, n);
  if (n == 1) {
    throw Error(ErrorCode::HypothesisNotMet,
                "a single-color family defines a " + to_string(k.at(1)) + "-relation; the displacement is too small");
  }
  const auto g0 = build_gamma(f, Length(0), oracle);
  const std::size_t v0 = g0.vertices.front();

  const auto gm = build_gamma(f, k.at(n - 1), oracle);
  const auto cm = component_containing(gm, v0);
  if (color_count_in(f, cm) < static_cast<std::size_t>(n)) {
    if (!is_mu_relation(f, cm, k.at(n - 1), oracle)) {
      throw Error(ErrorCode::HypothesisNotMet, "component " + list(cm) + " of the " + to_string(k.at(n - 1)) +
                                                   "-graph is not a relation");
    }
    diag.push_back("descending to component " + list(cm) + " with fewer colors");
    const Family sub = f.restricted(cm);
    const Choice inner = general_choice(sub, oracle, delta, diag);
    Choice c;
    c.v_star = cm[inner.v_star];
    for (auto v : inner.S) c.S.push_back(cm[v]);
    return c;
  }

  const auto gn = build_gamma(f, k.at(n), oracle);
  const auto cn = component_containing(gn, v0);
  std::size_t color1 = 0;
  for (std::size_t color = 1; color < f.color_count(); ++color) {
    if (gn.color_radius[color] > gn.color_radius[color1]) color1 = color;
  }
  std::vector<std::size_t> top;
  for (auto v : cn) {
    if (f.members[v].color == color1) top.push_back(v);
  }
  if (top.size() != 1) {
    throw Error(ErrorCode::HypothesisNotMet, "the color of largest radius appears " + std::to_string(top.size()) +
                                                 " times in component " + list(cn));
  }
  center_diagnostics(f, gn, cn, top.front(), k, oracle, diag);
  Choice c;
  c.v_star = top.front();
  for (auto v : cn) {
    if (v != c.v_star) c.S.push_back(v);
  }
  return c;
}

}  // namespace

ReductionStep reduce_step(std::span<const RingElement> xi, std::span<const RingElement> alpha,
                          const ReductionContext& ctx) {
  const SpaceOracle& oracle = ctx.oracle();
  if (xi.size() != alpha.size()) throw Error(ErrorCode::Precondition, "reduce_step: length mismatch");
  std::vector<std::size_t> part;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!alpha[i].is_zero() && !xi[i].is_zero()) part.push_back(i);
  }
  if (part.empty()) throw Error(ErrorCode::Precondition, "reduce_step: the relation has no nonzero terms");
  const Domain domain = xi[part.front()].domain();
  if (!domain.is_field()) throw Error(ErrorCode::Precondition, "reduce_step needs a field domain");

  ReductionStep step;
  step.family = expand_relation(xi, alpha);
  const int n = std::max<int>(1, static_cast<int>(step.family.color_count()));
  step.constants = ReductionConstants::make(oracle.delta(), n);
  step.beta.assign(xi.size(), RingElement::zero(domain));

  const Extended top = max_product_abs(xi, alpha, oracle);
  const Extended lhs = abs_value(dot(alpha, xi), oracle);
  if (!(lhs < top - step.constants.delta_n())) {
    throw Error(ErrorCode::HypothesisNotMet, "relation inequality fails: |sum| = " + lhs.to_string() +
                                                 ", max |alpha_i xi_i| = " + top.to_string() +
                                                 ", delta_n = " + to_string(step.constants.delta_n()));
  }

  // Two entries of one color cancel outright.
  std::vector<ColorKey> keys;
  for (auto i : part) keys.push_back(color_key(xi[i]));
  for (std::size_t b = 0; b < part.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (!(keys[a].representative == keys[b].representative)) continue;
      const std::size_t i = part[a];
      const std::size_t j = part[b];
      const Scalar lambda = keys[b].scale * keys[a].scale.inverse();
      const Word h = keys[b].translator * keys[a].translator.inverse();
      step.path = StepPath::SameColor;
      step.target = j;
      step.v_star = npos;
      step.replaced_color = npos;
      for (std::size_t v = 0; v < step.family.size(); ++v) {
        for (const auto& o : step.family.members[v].origins) {
          if (o.source == j && step.v_star == npos) {
            step.v_star = v;
            step.replaced_color = step.family.members[v].color;
          }
        }
      }
      step.beta[i] = -RingElement::monomial(lambda, h);
      step.result = xi[j] + step.beta[i] * xi[i];
      if (!step.result.is_zero()) throw Error(ErrorCode::Internal, "same-color cancellation left a remainder");
      step.diam_before = diam(xi[j], oracle);
      step.diam_after = Extended();
      step.log.push(LogOp::elementary(i, j, step.beta[i]));
      return step;
    }
  }

  const bool tree_path = oracle.delta() == Length(0) && !ctx.options().force_general;
  bool verified = true;
  if (!tree_path) {
    ctx.require_hypothesis(n);
    verified = ctx.hypothesis(n).satisfied;
  }
  const Choice choice = tree_path ? tree_choice(step.family, oracle)
                                  : general_choice(step.family, oracle, oracle.delta(), step.diagnostics);
  step.path = tree_path ? StepPath::Tree : StepPath::General;
  if (verified && !step.diagnostics.empty() && !tree_path) {
    for (const auto& line : step.diagnostics) {
      if (line.rfind("descending", 0) != 0) throw Error(ErrorCode::Internal, "center estimate violated: " + line);
    }
  }

  auto failure = [&](const std::string& what) -> Error {
    std::ostringstream os;
    os << what << " (v* = " << choice.v_star << ", S = " << list(choice.S) << ")";
    return Error(verified && !ctx.options().unsafe ? ErrorCode::Internal : ErrorCode::HypothesisNotMet, os.str());
  };

  const Member& star = step.family.members[choice.v_star];
  step.v_star = choice.v_star;
  step.S = choice.S;
  step.replaced_color = star.color;
  for (auto v : choice.S) {
    if (step.family.members[v].color == star.color) throw failure("S contains a member of the color of v*");
  }
  if (star.origins.size() != 1) throw failure("v* is a merged member");
  const Origin& so = star.origins.front();
  step.target = so.source;
  for (auto v : choice.S) {
    for (const auto& o : step.family.members[v].origins) {
      if (o.source == so.source) throw failure("S contains a translate of the replaced entry");
      step.beta[o.source] += RingElement::monomial(o.coeff, o.g);
    }
  }

  std::vector<std::size_t> chosen = choice.S;
  chosen.push_back(choice.v_star);
  const RingElement sum = step.family.sum(chosen);
  step.diam_before = diam(xi[step.target], oracle);
  step.diam_after = diam(sum, oracle);
  if (!(step.diam_after < step.diam_before - oracle.delta())) {
    throw failure("diameter did not drop: " + step.diam_before.to_string() + " -> " + step.diam_after.to_string());
  }

  const Word ginv = so.g.inverse();
  const Scalar cinv = so.coeff.inverse();
  step.result = sum.translated(ginv).scaled(cinv);
  RingElement check = xi[step.target];
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (step.beta[i].is_zero()) continue;
    RingElement b = step.beta[i].translated(ginv).scaled(cinv);
    check += b * xi[i];
    step.log.push(LogOp::elementary(i, step.target, std::move(b)));
  }
  if (!(check == step.result)) throw Error(ErrorCode::Internal, "column operation does not reproduce the reduced sum");
  return step;
}

void transform_coefficients(const TransformationLog& log, std::vector<RingElement>& alpha) {
  for (const auto& op : log.ops()) {
    switch (op.kind) {
      case LogOp::Kind::Elementary: alpha.at(op.i) -= alpha.at(op.j) * op.factor; break;
      case LogOp::Kind::Diagonal: {
        const auto& [w, c] = op.factor.terms().front();
        alpha.at(op.i) = alpha.at(op.i) * RingElement::monomial(c.inverse(), w.inverse());
        break;
      }
      case LogOp::Kind::Permute: std::swap(alpha.at(op.i), alpha.at(op.j)); break;
    }
  }
}

// ---------------------------------------------------------------------------
// Consumers.

namespace {

void check_lengths(std::span<const RingElement> xi, std::span<const RingElement> alpha) {
  if (xi.size() != alpha.size()) throw Error(ErrorCode::Precondition, "vector and coefficients differ in length");
  if (xi.empty()) throw Error(ErrorCode::Precondition, "empty vector");
}

bool has_zero(std::span<const RingElement> xs) {
  return std::any_of(xs.begin(), xs.end(), [](const RingElement& x) { return x.is_zero(); });
}

// Replays a step and checks the bookkeeping the loops rely on.
void advance(const ReductionStep& step, std::vector<RingElement>& xi, std::vector<RingElement>& alpha,
             TransformationLog& log, const SpaceOracle& oracle) {
  const auto before = progress_metric(xi, oracle);
  step.log.replay(xi);
  transform_coefficients(step.log, alpha);
  log.append(step.log);
  if (!(xi[step.target] == step.result)) throw Error(ErrorCode::Internal, "replayed entry differs from the step result");
  const auto after = progress_metric(xi, oracle);
  if (!(after < before)) throw Error(ErrorCode::Internal, "total diameter did not decrease");
}

}  // namespace

EliminationResult zero_coordinate(std::span<const RingElement> xi, std::span<const RingElement> alpha,
                                  const ReductionContext& ctx) {
  check_lengths(xi, alpha);
  if (std::all_of(alpha.begin(), alpha.end(), [](const RingElement& a) { return a.is_zero(); })) {
    throw Error(ErrorCode::Precondition, "zero_coordinate: the coefficients are all zero");
  }
  if (!dot(alpha, xi).is_zero()) throw Error(ErrorCode::Precondition, "zero_coordinate: alpha . xi is not 0");
  EliminationResult res;
  res.xi.assign(xi.begin(), xi.end());
  res.alpha.assign(alpha.begin(), alpha.end());
  for (std::size_t round = 0; !has_zero(res.xi); ++round) {
    if (round >= ctx.options().max_rounds) throw Error(ErrorCode::Internal, "zero_coordinate: round limit reached");
    auto step = reduce_step(res.xi, res.alpha, ctx);
    advance(step, res.xi, res.alpha, res.log, ctx.oracle());
    res.steps.push_back(std::move(step));
  }
  return res;
}

NormalizationResult normalize_unimodular(std::span<const RingElement> xi, std::span<const RingElement> alpha,
                                         const ReductionContext& ctx) {
  check_lengths(xi, alpha);
  const Domain domain = xi.front().domain();
  if (!(dot(alpha, xi) == RingElement::one(domain))) {
    throw Error(ErrorCode::Precondition, "normalize_unimodular: alpha . xi is not 1");
  }
  const SpaceOracle& oracle = ctx.oracle();
  NormalizationResult res;
  std::vector<RingElement> x(xi.begin(), xi.end());
  std::vector<RingElement> a(alpha.begin(), alpha.end());
  for (std::size_t round = 0;; ++round) {
    if (round >= ctx.options().max_rounds) throw Error(ErrorCode::Internal, "normalize_unimodular: round limit reached");
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) n += (!a[i].is_zero() && !x[i].is_zero()) ? 1 : 0;
    const Extended top = max_product_abs(x, a, oracle);
    const Length dn = ReductionConstants::make(oracle.delta(), n).delta_n();
    if (!(top > Extended(dn))) break;
    auto step = reduce_step(x, a, ctx);
    advance(step, x, a, res.log, oracle);
    res.steps.push_back(std::move(step));
  }

  std::size_t pivot = x.size();
  for (std::size_t i = 0; i < x.size() && pivot == x.size(); ++i) {
    if (!(a[i] * x[i]).is_zero() && is_unit(x[i])) pivot = i;
  }
  if (pivot == x.size()) {
    throw Error(ErrorCode::HypothesisNotMet, "no entry became a trivial unit; last vector " + to_string(x));
  }
  const auto [lambda, g] = *is_unit(x[pivot]);
  const RingElement unit_inverse = RingElement::monomial(lambda.inverse(), g.inverse());
  TransformationLog tail;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == pivot || x[j].is_zero()) continue;
    tail.push(LogOp::elementary(pivot, j, -(x[j] * unit_inverse)));
  }
  if (pivot != 0) tail.push(LogOp::permute(0, pivot));
  tail.replay(x);
  res.log.append(tail);
  if (!(x.front() == RingElement::monomial(lambda, g)) || std::any_of(x.begin() + 1, x.end(), [](const RingElement& e) {
        return !e.is_zero();
      })) {
    throw Error(ErrorCode::Internal, "normalize_unimodular: final vector is not (lambda g, 0, ..., 0)");
  }
  res.xi = std::move(x);
  res.lambda = lambda;
  res.g = g;
  return res;
}

std::string BasisResult::status_string() const {
  if (status == BasisStatus::VerifiedFree) return "VERIFIED_FREE";
  return "INDEPENDENT_UP_TO(" + std::to_string(r_max) + ")";
}

namespace {

std::optional<std::vector<RingElement>> search(std::span<const RingVector> vs, int r_max, int rank,
                                               std::vector<SearchRecord>& records) {
  for (int R = 0; R <= r_max; ++R) {
    auto dep = find_vector_dependence(vs, R, rank);
    records.push_back({vs.size(), R, dep.has_value()});
    if (dep) return dep;
  }
  return std::nullopt;
}

void require_field_elements(std::span<const RingElement> xs) {
  for (const auto& x : xs) {
    if (!x.domain().is_field()) throw Error(ErrorCode::Precondition, "basis computations need a field domain");
  }
}

}  // namespace

BasisResult ideal_basis(std::span<const RingElement> generators, const ReductionContext& ctx, int r_max) {
  if (r_max < 0) throw Error(ErrorCode::Usage, "R_max must be non-negative");
  require_field_elements(generators);
  BasisResult res;
  res.r_max = r_max;
  res.final_slots.assign(generators.begin(), generators.end());
  auto& slots = res.final_slots;
  for (;;) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i].is_zero()) active.push_back(i);
    }
    if (active.size() <= 1) {
      res.status = BasisStatus::VerifiedFree;
      break;
    }
    ctx.require_hypothesis(static_cast<int>(active.size()));
    std::vector<RingVector> sub;
    for (auto i : active) sub.push_back(RingVector{slots[i]});
    const auto dep = search(sub, r_max, ctx.oracle().rank(), res.searches);
    if (!dep) {
      res.status = BasisStatus::IndependentUpTo;
      break;
    }
    std::vector<RingElement> xs;
    for (auto i : active) xs.push_back(slots[i]);
    const auto elim = zero_coordinate(xs, *dep, ctx);
    const auto log = elim.log.remapped(active);
    log.replay(slots);
    res.log.append(log);
    res.reduction_steps += elim.steps.size();
  }
  for (const auto& s : slots) {
    if (!s.is_zero()) res.basis.push_back(s);
  }
  return res;
}

BasisResult submodule_basis(std::span<const RingVector> vectors, const ReductionContext& ctx, int r_max) {
  if (r_max < 0) throw Error(ErrorCode::Usage, "R_max must be non-negative");
  BasisResult res;
  res.r_max = r_max;
  res.status = BasisStatus::VerifiedFree;
  res.final_vector_slots.assign(vectors.begin(), vectors.end());
  auto& slots = res.final_vector_slots;
  const std::size_t m = slots.empty() ? 0 : slots.front().size();
  for (const auto& v : slots) {
    if (v.size() != m) throw Error(ErrorCode::Precondition, "vectors of different lengths");
    require_field_elements(v);
  }

  // Split off one pivot per coordinate: eliminate within the projection until
  // a single vector has a nonzero entry there, then set it aside.
  std::vector<bool> pivot(slots.size(), false);
  for (std::size_t c = 0; c < m && res.status == BasisStatus::VerifiedFree; ++c) {
    for (;;) {
      std::vector<std::size_t> active;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!pivot[i] && !slots[i][c].is_zero()) active.push_back(i);
      }
      if (active.size() == 1) pivot[active.front()] = true;
      if (active.size() <= 1) break;
      ctx.require_hypothesis(static_cast<int>(active.size()));
      std::vector<RingVector> proj;
      std::vector<RingElement> xs;
      for (auto i : active) {
        proj.push_back(RingVector{slots[i][c]});
        xs.push_back(slots[i][c]);
      }
      const auto dep = search(proj, r_max, ctx.oracle().rank(), res.searches);
      if (!dep) {
        res.status = BasisStatus::IndependentUpTo;
        break;
      }
      const auto elim = zero_coordinate(xs, *dep, ctx);
      const auto log = elim.log.remapped(active);
      log.replay(slots);
      res.log.append(log);
      res.reduction_steps += elim.steps.size();
    }
  }
  for (const auto& v : slots) {
    if (!is_zero(v)) res.vector_basis.push_back(v);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Matrices.

RingMatrix identity_matrix(Domain d, std::size_t n) {
  RingMatrix m(n, RingVector(n, RingElement::zero(d)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = RingElement::one(d);
  return m;
}

RingMatrix multiply(const RingMatrix& x, const RingMatrix& y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::Precondition, "empty matrix");
  const std::size_t inner = y.size();
  const std::size_t cols = y.front().size();
  const Domain d = y.front().front().domain();
  RingMatrix out(x.size(), RingVector(cols, RingElement::zero(d)));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != inner) throw Error(ErrorCode::Precondition, "matrix shapes do not match");
    for (std::size_t k = 0; k < inner; ++k) {
      if (x[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += x[i][k] * y[k][j];
    }
  }
  return out;
}

RingMatrix log_product(const TransformationLog& log, Domain d, std::size_t n) {
  RingMatrix m = identity_matrix(d, n);
  log.replay(m);
  return m;
}

GeFactorResult ge_factor(const RingMatrix& X, const RingMatrix& A, const ReductionContext& ctx) {
  const std::size_t n = X.size();
  if (n == 0 || A.size() != n) throw Error(ErrorCode::Precondition, "ge_factor needs square matrices of one size");
  for (std::size_t i = 0; i < n; ++i) {
    if (X[i].size() != n || A[i].size() != n) throw Error(ErrorCode::Precondition, "ge_factor needs square matrices");
  }
  const Domain d = X.front().front().domain();
  if (!d.is_field()) throw Error(ErrorCode::Precondition, "ge_factor needs a field domain");
  const RingMatrix I = identity_matrix(d, n);
  if (multiply(A, X) != I) throw Error(ErrorCode::Precondition, "the claimed inverse does not satisfy AX = 1");

  GeFactorResult res;
  TransformationLog forward;  // reduces X to the identity by row operations
  RingMatrix cur = X;
  for (std::size_t k = 0; k < n; ++k) {
    const RingMatrix B = multiply(A, log_product(forward.inverse(), d, n));
    std::vector<RingElement> xi;
    std::vector<RingElement> alpha;
    std::vector<std::size_t> map;
    for (std::size_t i = k; i < n; ++i) {
      xi.push_back(cur[i][k]);
      alpha.push_back(B[k][i]);
      map.push_back(i);
    }
    auto norm = normalize_unimodular(xi, alpha, ctx);
    TransformationLog block = norm.log.remapped(map);
    const RingElement unit_inverse = RingElement::monomial(norm.lambda.inverse(), norm.g.inverse());
    block.replay(cur);
    for (std::size_t i = 0; i < k; ++i) {
      if (cur[i][k].is_zero()) continue;
      LogOp op = LogOp::elementary(k, i, -(cur[i][k] * unit_inverse));
      geuclid::apply(op, cur);
      block.push(std::move(op));
    }
    forward.append(block);
    for (auto& s : norm.steps) res.steps.push_back(std::move(s));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto unit = is_unit(cur[k][k]);
    if (!unit) throw Error(ErrorCode::Internal, "ge_factor: diagonal entry is not a trivial unit");
    if (unit->first.is_one() && unit->second.is_identity()) continue;
    LogOp op = LogOp::diagonal(k, unit->first.inverse(), unit->second.inverse());
    geuclid::apply(op, cur);
    forward.push(std::move(op));
  }
  if (cur != I) throw Error(ErrorCode::Internal, "ge_factor: reduction did not reach the identity");
  res.log = forward.inverse();
  if (log_product(res.log, d, n) != X) throw Error(ErrorCode::Internal, "ge_factor: factorization does not replay to X");
  return res;
}

}  // namespace geuclid
