#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace geuclid {

// Geometric quantities (distances, Gromov products, radii, delta) are exact
// rationals with small denominators.
using Length = boost::rational<std::int64_t>;

inline Length half(Length x) { return x / 2; }

std::string to_string(const Length& x);
/// Always `num/den`, as used by the edge-list header.
std::string to_fraction_string(const Length& x);
/// Accepts `n`, `n/d`, or a terminating decimal such as `0.5`.
Length parse_length(const std::string& text);

/// A length extended by a bottom element below every rational: the value of
/// |0| and diam(0).
class Extended {
 public:
  constexpr Extended() = default;  // -infinity
  Extended(Length v) : finite_(true), value_(v) {}  // NOLINT(google-explicit-constructor)

  static Extended neg_infinity() { return {}; }

  [[nodiscard]] bool is_finite() const noexcept { return finite_; }
  [[nodiscard]] const Length& value() const;

  friend bool operator==(const Extended& a, const Extended& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend Extended operator-(const Extended& a, const Length& b) {
    return a.finite_ ? Extended(a.value_ - b) : a;
  }

  [[nodiscard]] std::string to_string() const;

 private:
  bool finite_ = false;
  Length value_{0};
};

}  // namespace geuclid
