#include "length.hpp"

#include <cctype>

#include "error.hpp"

namespace geuclid {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::DomainMismatch: return "domain-mismatch";
    case ErrorCode::OutOfDomain: return "out-of-domain";
    case ErrorCode::Resource: return "resource-limit";
    case ErrorCode::Precondition: return "precondition-failed";
    case ErrorCode::HypothesisNotMet: return "hypothesis-not-met";
    case ErrorCode::Inconclusive: return "inconclusive";
    case ErrorCode::StarFailure: return "star-condition-failed";
    case ErrorCode::Internal: return "internal-error";
    case ErrorCode::Usage: return "usage-error";
    case ErrorCode::Unsupported: return "unsupported";
  }
  return "unknown";
}

std::string to_string(const Length& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

std::string to_fraction_string(const Length& x) {
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

Length parse_length(const std::string& text) {
  std::size_t pos = 0;
  auto read_int = [&](bool allow_sign) {
    bool neg = false;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    const std::size_t start = pos;
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    if (pos == start) throw ParseError(pos, "expected digits");
    return neg ? -v : v;
  };
  const std::int64_t whole = read_int(true);
  if (pos == text.size()) return Length(whole);
  if (text[pos] == '/') {
    ++pos;
    const std::int64_t den = read_int(false);
    if (den == 0) throw ParseError(pos, "zero denominator");
    if (pos != text.size()) throw ParseError(pos, "trailing characters");
    return Length(whole, den);
  }
  if (text[pos] == '.') {
    ++pos;
    std::int64_t frac = 0;
    std::int64_t scale = 1;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      frac = frac * 10 + (text[pos] - '0');
      scale *= 10;
      ++pos;
    }
    if (pos == start || pos != text.size()) throw ParseError(pos, "malformed decimal");
    const bool neg = !text.empty() && text[0] == '-';
    return Length(whole) + Length(neg ? -frac : frac, scale);
  }
  throw ParseError(pos, "unexpected character in length");
}

const Length& Extended::value() const {
  if (!finite_) throw Error(ErrorCode::Internal, "value() of -infinity");
  return value_;
}

std::string Extended::to_string() const {
  return finite_ ? geuclid::to_string(value_) : std::string("-inf");
}

}  // namespace geuclid
