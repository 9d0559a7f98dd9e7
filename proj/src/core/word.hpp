#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace geuclid {

// A letter is a signed generator index: +k is generator k-1 (a, b, ...),
// -k its inverse (A, B, ...).
using Letter = std::int8_t;

constexpr int kMaxRank = 26;

// Shortlex position of a letter: a < A < b < B < ...
constexpr int letter_rank(Letter l) noexcept {
  const int g = l > 0 ? l - 1 : -l - 1;
  return 2 * g + (l < 0 ? 1 : 0);
}

/// Freely reduced word in a free group; doubles as a vertex of the Cayley tree.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(std::vector<Letter> letters);
  static Word generator(int index, bool inverse = false);

  [[nodiscard]] const std::vector<Letter>& letters() const noexcept { return letters_; }
  [[nodiscard]] std::size_t length() const noexcept { return letters_.size(); }
  [[nodiscard]] bool is_identity() const noexcept { return letters_.empty(); }
  /// Largest generator index used plus one (0 for the identity).
  [[nodiscard]] int max_generator() const noexcept;

  [[nodiscard]] Word inverse() const;
  [[nodiscard]] Word prefix(std::size_t n) const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex order over the alphabet a < A < b < B < ...
  friend std::strong_ordering operator<=>(const Word& u, const Word& v);

  /// `1` for the identity, otherwise letters with uppercase inverses.
  [[nodiscard]] std::string to_string() const;

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;
};

/// Tree distance |u^-1 v| without materializing the product.
std::size_t tree_distance(const Word& u, const Word& v);

/// Length of the longest common prefix.
std::size_t common_prefix(const Word& u, const Word& v);

/// All reduced words of length <= radius over `rank` generators, in shortlex order.
std::vector<Word> words_up_to(int rank, int radius);

/// Number of reduced words of length <= radius.
std::size_t count_words_up_to(int rank, int radius);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace geuclid
