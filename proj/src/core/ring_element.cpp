#include "ring_element.hpp"

#include <algorithm>

#include "error.hpp"

namespace geuclid {

RingElement RingElement::monomial(const Scalar& c, Word g) {
  RingElement r(c.domain());
  if (!c.is_zero()) r.terms_.emplace_back(std::move(g), c);
  return r;
}

RingElement RingElement::from_terms(Domain d, std::vector<Term> terms) {
  for (const auto& t : terms) require_same_domain(d, t.second.domain());
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  RingElement r(d);
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
      if (r.terms_.back().second.is_zero()) r.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

Scalar RingElement::coefficient(const Word& g) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                             [](const Term& t, const Word& w) { return t.first < w; });
  if (it != terms_.end() && it->first == g) return it->second;
  return Scalar::zero(domain_);
}

std::vector<Word> RingElement::support() const {
  std::vector<Word> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.first);
  return out;
}

Extended RingElement::word_length() const {
  if (terms_.empty()) return {};
  // Shortlex order: the last word is a longest one.
  return Length(static_cast<std::int64_t>(terms_.back().first.length()));
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

RingElement operator+(const RingElement& x, const RingElement& y) {
  require_same_domain(x.domain_, y.domain_);
  RingElement r(x.domain_);
  r.terms_.reserve(x.terms_.size() + y.terms_.size());
  auto i = x.terms_.begin();
  auto j = y.terms_.begin();
  while (i != x.terms_.end() || j != y.terms_.end()) {
    if (j == y.terms_.end() || (i != x.terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == x.terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      Scalar c = i->second + j->second;
      if (!c.is_zero()) r.terms_.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

RingElement operator-(const RingElement& x, const RingElement& y) { return x + (-y); }

RingElement operator*(const RingElement& x, const RingElement& y) {
  require_same_domain(x.domain_, y.domain_);
  std::vector<Term> products;
  products.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& [u, a] : x.terms_) {
    for (const auto& [v, b] : y.terms_) products.emplace_back(u * v, a * b);
  }
  return RingElement::from_terms(x.domain_, std::move(products));
}

RingElement RingElement::scaled(const Scalar& c) const {
  require_same_domain(domain_, c.domain());
  if (c.is_zero()) return RingElement(domain_);
  RingElement r = *this;
  for (auto& t : r.terms_) t.second = c * t.second;
  return r;
}

RingElement RingElement::translated(const Word& g) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.emplace_back(g * w, c);
  return from_terms(domain_, std::move(out));
}

std::optional<std::pair<Scalar, Word>> RingElement::as_trivial_unit() const {
  if (terms_.size() != 1 || !terms_.front().second.is_unit()) return std::nullopt;
  return std::make_pair(terms_.front().second, terms_.front().first);
}

RingElement RingElement::convert(Domain target) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.emplace_back(w, c.convert(target));
  return from_terms(target, std::move(out));
}

bool operator==(const RingElement& x, const RingElement& y) {
  if (!(x.domain_ == y.domain_) || x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    if (x.terms_[i].first != y.terms_[i].first || !(x.terms_[i].second == y.terms_[i].second)) return false;
  }
  return true;
}

std::strong_ordering compare(const RingElement& x, const RingElement& y) {
  const std::size_t n = std::min(x.terms_.size(), y.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x.terms_[i].first <=> y.terms_[i].first; c != 0) return c;
    if (auto c = x.terms_[i].second <=> y.terms_[i].second; c != 0) return c;
  }
  return x.terms_.size() <=> y.terms_.size();
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (domain_.kind == DomainKind::FiniteField) {
      coeff = c.to_string();
    } else {
      negative = c.is_negative();
      coeff = negative ? (-c).to_string() : c.to_string();
    }
    if (negative) {
      s += '-';
    } else if (!first) {
      s += '+';
    }
    first = false;
    if (w.is_identity()) {
      s += coeff;
    } else {
      if (coeff != "1") s += coeff + "*";
      s += w.to_string();
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

std::vector<Point> support_points(const RingElement& x) {
  std::vector<Point> out;
  out.reserve(x.size());
  for (const auto& t : x.terms()) out.push_back(Point::vertex(t.first));
  return out;
}

Measure measure(const RingElement& x, const SpaceOracle& oracle) {
  Measure m;
  m.support = support_points(x);
  if (x.is_zero()) return m;
  oracle.require_certified(m.support, "measure");
  Length abs(0);
  for (const auto& p : m.support) abs = std::max(abs, oracle.norm(p));
  m.abs = abs;
  m.diam = diameter(oracle, m.support);
  return m;
}

Extended abs_value(const RingElement& x, const SpaceOracle& oracle) {
  if (x.is_zero()) return {};
  Length abs(0);
  for (const auto& t : x.terms()) {
    const Point p = Point::vertex(t.first);
    if (!oracle.certified(p)) {
      throw Error(ErrorCode::OutOfDomain, "support point " + p.to_string() + " lies outside the certified region of " +
                                              oracle.description());
    }
    abs = std::max(abs, oracle.norm(p));
  }
  return abs;
}

Extended diam(const RingElement& x, const SpaceOracle& oracle) { return measure(x, oracle).diam; }

std::optional<std::pair<Scalar, Word>> is_unit(const RingElement& x) {
  if (!x.domain().is_field()) {
    throw Error(ErrorCode::Unsupported, "is_unit needs a field coefficient domain");
  }
  return x.as_trivial_unit();
}

ColorKey color_key(const RingElement& x) {
  if (x.is_zero()) throw Error(ErrorCode::Precondition, "color_key of the zero element");
  if (!x.domain().is_field()) throw Error(ErrorCode::Unsupported, "color_key needs a field coefficient domain");
  std::optional<ColorKey> best;
  for (const auto& [w, c] : x.terms()) {
    RingElement candidate = x.translated(w.inverse()).scaled(c.inverse());
    if (!best || compare(candidate, best->representative) < 0) {
      best = ColorKey{std::move(candidate), w, c};
    }
  }
  return *best;
}

RingElement mod_p_reduce(const RingElement& x, std::uint32_t p) {
  return x.convert(Domain::finite_field(p));
}

RingElement dot(std::span<const RingElement> a, std::span<const RingElement> x) {
  if (a.size() != x.size() || a.empty()) throw Error(ErrorCode::Precondition, "dot: length mismatch");
  RingElement s(x.front().domain());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

RingVector add(const RingVector& u, const RingVector& v) {
  if (u.size() != v.size()) throw Error(ErrorCode::Precondition, "vector length mismatch");
  RingVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + v[i];
  return out;
}

RingVector left_mul(const RingElement& c, const RingVector& v) {
  RingVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(c * x);
  return out;
}

bool is_zero(const RingVector& v) {
  return std::all_of(v.begin(), v.end(), [](const RingElement& x) { return x.is_zero(); });
}

Extended abs_value(const RingVector& v, const SpaceOracle& oracle) {
  Extended best;
  for (const auto& x : v) best = std::max(best, abs_value(x, oracle));
  return best;
}

std::string to_string(const RingVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += "; ";
    s += v[i].to_string();
  }
  return s + ")";
}

}  // namespace geuclid
