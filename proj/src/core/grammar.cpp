#include "grammar.hpp"

#include <cctype>

#include "error.hpp"

namespace geuclid {

namespace {

constexpr std::string_view kSuperMinusOne = "⁻¹";

class Parser {
 public:
  Parser(std::string_view text, int rank) : text_(text), rank_(rank == 0 ? kMaxRank : rank) {}

  [[nodiscard]] std::size_t pos() const { return pos_; }
  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0 &&
           !(keep_newlines && text_[pos_] == '\n')) {
      ++pos_;
    }
  }

  bool keep_newlines = false;

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
  }

  [[nodiscard]] bool at_letter() const { return std::isalpha(static_cast<unsigned char>(peek())) != 0; }

  Letter letter() {
    const char c = peek();
    const bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
    const int index = upper ? c - 'A' : c - 'a';
    if (index >= rank_) {
      throw ParseError(pos_, std::string("unknown generator '") + c + "' for rank " + std::to_string(rank_));
    }
    ++pos_;
    bool inverse = upper;
    if (text_.substr(pos_, kSuperMinusOne.size()) == kSuperMinusOne) {
      pos_ += kSuperMinusOne.size();
      inverse = !inverse;
    }
    const auto l = static_cast<Letter>(index + 1);
    return inverse ? static_cast<Letter>(-l) : l;
  }

  // letter+ or '1'; no interior whitespace.
  Word word() {
    if (accept('1')) return Word{};
    if (!at_letter()) throw ParseError(pos_, "expected a word");
    std::vector<Letter> letters;
    while (at_letter()) letters.push_back(letter());
    return Word::reduce(std::move(letters));
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
    if (pos_ == start) throw ParseError(pos_, "expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Scalar scalar(Domain domain, bool negative) {
    const std::size_t start = pos_;
    mpz_class num = integer();
    mpz_class den = 1;
    if (accept('/')) {
      den = integer();
      if (den == 0) throw ParseError(pos_, "zero denominator");
    }
    mpq_class q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    try {
      return Scalar(domain, q);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(start, e.what());
    }
  }

  Term term(Domain domain, bool negative) {
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
      Scalar c = scalar(domain, negative);
      skip_ws();
      if (accept('*')) {
        skip_ws();
        return {word(), c};
      }
      if (at_letter()) throw ParseError(pos_, "expected '*' between scalar and word");
      return {Word{}, c};
    }
    if (at_letter()) {
      Word w = word();
      return {std::move(w), Scalar(domain, negative ? -1L : 1L)};
    }
    throw ParseError(pos_, "expected a term");
  }

  // Stops before any character in `stop` (or at end).
  RingElement element(Domain domain, std::string_view stop) {
    std::vector<Term> terms;
    skip_ws();
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    terms.push_back(term(domain, negative));
    while (true) {
      skip_ws();
      if (at_end() || stop.find(peek()) != std::string_view::npos) break;
      if (accept('+')) {
        negative = false;
      } else if (accept('-')) {
        negative = true;
      } else {
        throw ParseError(pos_, std::string("unexpected character '") + peek() + "'");
      }
      terms.push_back(term(domain, negative));
    }
    return RingElement::from_terms(domain, std::move(terms));
  }

  RingVector vector(Domain domain) {
    skip_ws();
    expect('(');
    RingVector v;
    v.push_back(element(domain, ";)"));
    while (accept(';')) v.push_back(element(domain, ";)"));
    expect(')');
    return v;
  }

  void finish() {
    skip_ws();
    if (!at_end()) throw ParseError(pos_, "trailing characters");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int rank_;
};

bool is_separator(char c) { return c == ',' || c == '\n'; }

}  // namespace

Word parse_word(std::string_view text, int rank) {
  Parser p(text, rank);
  p.skip_ws();
  if (p.accept('1')) {
    p.finish();
    return Word{};
  }
  std::vector<Letter> letters;
  while (true) {
    p.skip_ws();
    if (p.at_end()) break;
    if (!p.at_letter()) throw ParseError(p.pos(), "expected a generator letter");
    letters.push_back(p.letter());
  }
  return Word::reduce(std::move(letters));
}

RingElement parse_element(std::string_view text, Domain domain, int rank) {
  Parser p(text, rank);
  RingElement x = p.element(domain, "");
  p.finish();
  return x;
}

RingVector parse_vector(std::string_view text, Domain domain, int rank) {
  Parser p(text, rank);
  RingVector v = p.vector(domain);
  p.finish();
  return v;
}

std::vector<RingElement> parse_element_list(std::string_view text, Domain domain, int rank) {
  Parser p(text, rank);
  p.keep_newlines = true;
  std::vector<RingElement> out;
  p.skip_ws();
  while (!p.at_end()) {
    out.push_back(p.element(domain, ",\n"));
    while (!p.at_end() && (is_separator(p.peek()) || std::isspace(static_cast<unsigned char>(p.peek())))) {
      p.accept(p.peek());
    }
  }
  return out;
}

std::vector<RingVector> parse_vector_list(std::string_view text, Domain domain, int rank) {
  Parser p(text, rank);
  std::vector<RingVector> out;
  p.skip_ws();
  while (!p.at_end()) {
    out.push_back(p.vector(domain));
    p.skip_ws();
    while (!p.at_end() && is_separator(p.peek())) {
      p.accept(p.peek());
      p.skip_ws();
    }
  }
  return out;
}

std::vector<Word> parse_word_list(std::string_view text, int rank) {
  std::vector<Word> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    bool blank = true;
    for (char c : piece) blank = blank && std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!blank) {
      try {
        out.push_back(parse_word(piece, rank));
      } catch (const ParseError& e) {
        throw ParseError(start + e.offset(), "bad word in list");
      }
    }
    start = end + 1;
  }
  return out;
}

}  // namespace geuclid
