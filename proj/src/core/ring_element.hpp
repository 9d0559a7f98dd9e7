#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "length.hpp"
#include "scalar.hpp"
#include "space.hpp"
#include "word.hpp"

namespace geuclid {

using Term = std::pair<Word, Scalar>;

/// Finite-support element of K[F]: terms sorted by shortlex word, no zero
/// coefficients stored.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(Domain domain) : domain_(domain) {}

  static RingElement zero(Domain d) { return RingElement(d); }
  static RingElement monomial(const Scalar& c, Word g);
  static RingElement one(Domain d) { return monomial(Scalar::one(d), Word{}); }
  /// Sums duplicate words and drops zeros.
  static RingElement from_terms(Domain d, std::vector<Term> terms);

  [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
  [[nodiscard]] Scalar coefficient(const Word& g) const;
  [[nodiscard]] std::vector<Word> support() const;
  /// Longest support word (word-length filtration); -inf for zero.
  [[nodiscard]] Extended word_length() const;

  RingElement operator-() const;
  friend RingElement operator+(const RingElement& x, const RingElement& y);
  friend RingElement operator-(const RingElement& x, const RingElement& y);
  friend RingElement operator*(const RingElement& x, const RingElement& y);
  RingElement& operator+=(const RingElement& y) { return *this = *this + y; }
  RingElement& operator-=(const RingElement& y) { return *this = *this - y; }

  [[nodiscard]] RingElement scaled(const Scalar& c) const;
  /// g * this.
  [[nodiscard]] RingElement translated(const Word& g) const;

  /// (lambda, g) when the element is a single term lambda*g with lambda invertible.
  [[nodiscard]] std::optional<std::pair<Scalar, Word>> as_trivial_unit() const;

  [[nodiscard]] RingElement convert(Domain target) const;

  friend bool operator==(const RingElement& x, const RingElement& y);
  /// Total order: term lists compared lexicographically (word, then coefficient).
  friend std::strong_ordering compare(const RingElement& x, const RingElement& y);

  /// Canonical serialization in the element grammar.
  [[nodiscard]] std::string to_string() const;

 private:
  Domain domain_;
  std::vector<Term> terms_;
};

/// Geometric support {g.o : coefficient at g nonzero}.
std::vector<Point> support_points(const RingElement& x);

struct Measure {
  Extended abs;
  Extended diam;
  std::vector<Point> support;
};

/// |x| and diam(x) in the oracle; -inf for zero. Throws OutOfDomain when the
/// support leaves the oracle's certified region.
Measure measure(const RingElement& x, const SpaceOracle& oracle);
Extended abs_value(const RingElement& x, const SpaceOracle& oracle);
Extended diam(const RingElement& x, const SpaceOracle& oracle);

/// Trivial-unit test over a field; Unsupported over Z.
std::optional<std::pair<Scalar, Word>> is_unit(const RingElement& x);

/// x = scale * translator * representative, with representative having
/// coefficient 1 at the identity. Equal representatives exactly when the
/// elements differ by a trivial unit on the left.
struct ColorKey {
  RingElement representative;
  Word translator;
  Scalar scale;
};

ColorKey color_key(const RingElement& x);

/// Coefficientwise reduction Z -> F_p (or Q -> F_p when denominators allow).
RingElement mod_p_reduce(const RingElement& x, std::uint32_t p);

using RingVector = std::vector<RingElement>;

/// Row-vector times scalar-on-the-left: sum_i a_i x_i.
RingElement dot(std::span<const RingElement> a, std::span<const RingElement> x);
RingVector add(const RingVector& u, const RingVector& v);
/// c * v (left multiplication of every coordinate).
RingVector left_mul(const RingElement& c, const RingVector& v);
bool is_zero(const RingVector& v);
Extended abs_value(const RingVector& v, const SpaceOracle& oracle);
std::string to_string(const RingVector& v);

}  // namespace geuclid
