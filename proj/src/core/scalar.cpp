#include "scalar.hpp"

#include <cctype>

#include "error.hpp"

namespace geuclid {

namespace {

std::uint32_t reduce_mod(const mpz_class& v, std::uint32_t p) {
  mpz_class r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1U) r = r * b % m;
    b = b * b % m;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Domain Domain::finite_field(std::uint32_t p) {
  if (p >= (1U << 31U) || !is_prime(p)) {
    throw Error(ErrorCode::Precondition, "finite field characteristic must be a prime below 2^31");
  }
  return {DomainKind::FiniteField, p};
}

std::string Domain::name() const {
  switch (kind) {
    case DomainKind::FiniteField: return "fp:" + std::to_string(p);
    case DomainKind::Rational: return "q";
    case DomainKind::Integer: return "z";
  }
  return "?";
}

Domain Domain::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text == "z" || text == "Z") return integers();
  if (text.rfind("fp:", 0) == 0 && text.size() > 3) {
    for (std::size_t i = 3; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError(i, "bad prime in domain");
    }
    return finite_field(static_cast<std::uint32_t>(std::stoul(text.substr(3))));
  }
  throw ParseError(0, "unknown domain '" + text + "' (expected q, z or fp:<p>)");
}

void require_same_domain(const Domain& a, const Domain& b) {
  if (!(a == b)) throw Error(ErrorCode::DomainMismatch, "domain mismatch: " + a.name() + " vs " + b.name());
}

Scalar::Scalar(Domain domain, long value) : Scalar(domain, mpq_class(value)) {}

Scalar::Scalar(Domain domain, const mpz_class& value) : Scalar(domain, mpq_class(value)) {}

Scalar::Scalar(Domain domain, const mpq_class& value) : domain_(domain) {
  switch (domain.kind) {
    case DomainKind::FiniteField: {
      const std::uint32_t den = reduce_mod(value.get_den(), domain.p);
      if (den == 0) {
        throw Error(ErrorCode::Parse, "scalar " + value.get_str() + " is not invertible in " + domain.name());
      }
      const std::uint32_t num = reduce_mod(value.get_num(), domain.p);
      value_ = static_cast<std::uint32_t>(std::uint64_t{num} * pow_mod(den, domain.p - 2, domain.p) % domain.p);
      break;
    }
    case DomainKind::Rational:
      value_ = value;
      std::get<mpq_class>(value_).canonicalize();
      break;
    case DomainKind::Integer: {
      mpq_class v = value;
      v.canonicalize();
      if (v.get_den() != 1) throw Error(ErrorCode::Parse, "scalar " + v.get_str() + " is not an integer");
      value_ = v;
      break;
    }
  }
}

bool Scalar::is_zero() const {
  if (domain_.kind == DomainKind::FiniteField) return residue() == 0;
  return sgn(rational()) == 0;
}

bool Scalar::is_one() const {
  if (domain_.kind == DomainKind::FiniteField) return residue() == 1 % domain_.p;
  return rational() == 1;
}

bool Scalar::is_unit() const {
  if (domain_.kind == DomainKind::Integer) return rational() == 1 || rational() == -1;
  return !is_zero();
}

bool Scalar::is_negative() const {
  return domain_.kind != DomainKind::FiniteField && sgn(rational()) < 0;
}

mpq_class Scalar::to_rational() const {
  if (domain_.kind == DomainKind::FiniteField) return mpq_class(static_cast<unsigned long>(residue()));
  return rational();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (domain_.kind == DomainKind::FiniteField) {
    r.value_ = residue() == 0 ? 0U : domain_.p - residue();
  } else {
    r.value_ = mpq_class(-rational());
  }
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_domain(a.domain_, b.domain_);
  Scalar r = a;
  if (a.domain_.kind == DomainKind::FiniteField) {
    r.value_ = static_cast<std::uint32_t>((std::uint64_t{a.residue()} + b.residue()) % a.domain_.p);
  } else {
    r.value_ = mpq_class(a.rational() + b.rational());
  }
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_domain(a.domain_, b.domain_);
  Scalar r = a;
  if (a.domain_.kind == DomainKind::FiniteField) {
    r.value_ = static_cast<std::uint32_t>(std::uint64_t{a.residue()} * b.residue() % a.domain_.p);
  } else {
    r.value_ = mpq_class(a.rational() * b.rational());
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::Precondition, "scalar " + to_string() + " is not invertible");
  Scalar r = *this;
  if (domain_.kind == DomainKind::FiniteField) {
    r.value_ = pow_mod(residue(), domain_.p - 2, domain_.p);
  } else {
    r.value_ = mpq_class(1 / rational());
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.domain_ == b.domain_)) return false;
  if (a.domain_.kind == DomainKind::FiniteField) return a.residue() == b.residue();
  return a.rational() == b.rational();
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  require_same_domain(a.domain_, b.domain_);
  if (a.domain_.kind == DomainKind::FiniteField) return a.residue() <=> b.residue();
  const int c = cmp(a.rational(), b.rational());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Scalar Scalar::convert(Domain target) const {
  if (target == domain_) return *this;
  if (domain_.kind == DomainKind::FiniteField && target.kind != DomainKind::FiniteField) {
    return Scalar(target, to_rational());
  }
  if (domain_.kind == DomainKind::FiniteField) {
    throw Error(ErrorCode::DomainMismatch, "cannot convert between different finite fields");
  }
  return Scalar(target, rational());
}

std::string Scalar::to_string() const {
  if (domain_.kind == DomainKind::FiniteField) return std::to_string(residue());
  return rational().get_str();
}

}  // namespace geuclid
