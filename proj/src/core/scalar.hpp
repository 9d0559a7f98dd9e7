#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace geuclid {

enum class DomainKind { FiniteField, Rational, Integer };

/// Coefficient domain of a computation: F_p (p < 2^31), Q, or Z.
struct Domain {
  DomainKind kind = DomainKind::Rational;
  std::uint32_t p = 0;

  static Domain finite_field(std::uint32_t p);
  static Domain rationals() { return {DomainKind::Rational, 0}; }
  static Domain integers() { return {DomainKind::Integer, 0}; }

  [[nodiscard]] bool is_field() const noexcept { return kind != DomainKind::Integer; }
  /// `fp:<p>`, `q`, or `z`.
  [[nodiscard]] std::string name() const;
  static Domain parse(const std::string& text);

  friend bool operator==(const Domain&, const Domain&) = default;
};

bool is_prime(std::uint64_t n);

/// An element of the coefficient domain. F_p residues are stored as their
/// canonical representative 0..p-1; Q and Z values as reduced GMP rationals
/// (Z values always have denominator 1).
class Scalar {
 public:
  Scalar() : domain_(Domain::rationals()), value_(mpq_class(0)) {}
  Scalar(Domain domain, long value);
  Scalar(Domain domain, const mpz_class& value);
  /// Maps a rational into the domain; fails for p | den in F_p or den != 1 in Z.
  Scalar(Domain domain, const mpq_class& value);

  static Scalar zero(Domain d) { return {d, 0L}; }
  static Scalar one(Domain d) { return {d, 1L}; }

  [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_one() const;
  /// True when the scalar is invertible in its domain.
  [[nodiscard]] bool is_unit() const;
  [[nodiscard]] bool is_negative() const;

  [[nodiscard]] std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  [[nodiscard]] const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  /// Canonical rational lift: F_p residues map to 0..p-1.
  [[nodiscard]] mpq_class to_rational() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  [[nodiscard]] Scalar inverse() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Total order within one domain (numeric for Q/Z, residue for F_p).
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  /// Reinterpret in another domain (Z -> Q, Z -> F_p, Q -> F_p, ...).
  [[nodiscard]] Scalar convert(Domain target) const;

  [[nodiscard]] std::string to_string() const;

 private:
  Domain domain_;
  std::variant<std::uint32_t, mpq_class> value_;
};

void require_same_domain(const Domain& a, const Domain& b);

}  // namespace geuclid
