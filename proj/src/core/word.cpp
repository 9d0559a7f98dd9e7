#include "word.hpp"

#include <algorithm>
#include <stdexcept>

namespace geuclid {

Word::Word(std::initializer_list<Letter> letters) {
  *this = reduce(std::vector<Letter>(letters));
}

Word Word::reduce(std::vector<Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw std::invalid_argument("letter 0 is not a generator");
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

Word Word::generator(int index, bool inverse) {
  if (index < 0 || index >= kMaxRank) throw std::out_of_range("generator index out of range");
  const auto l = static_cast<Letter>(index + 1);
  return Word(std::vector<Letter>{inverse ? static_cast<Letter>(-l) : l});
}

int Word::max_generator() const noexcept {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l > 0 ? int{l} : -int{l});
  return m;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = static_cast<Letter>(-l);
  return Word(std::move(out));
}

Word Word::prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Word operator*(const Word& u, const Word& v) {
  const auto& a = u.letters_;
  const auto& b = v.letters_;
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() && a[a.size() - 1 - cancel] == -b[cancel]) ++cancel;
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return Word(std::move(out));
}

std::strong_ordering operator<=>(const Word& u, const Word& v) {
  if (auto c = u.letters_.size() <=> v.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < u.letters_.size(); ++i) {
    if (auto c = letter_rank(u.letters_[i]) <=> letter_rank(v.letters_[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) {
    s.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  }
  return s;
}

std::size_t common_prefix(const Word& u, const Word& v) {
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

std::size_t tree_distance(const Word& u, const Word& v) {
  const std::size_t c = common_prefix(u, v);
  return u.length() + v.length() - 2 * c;
}

std::vector<Word> words_up_to(int rank, int radius) {
  std::vector<Word> out{Word{}};
  if (rank <= 0 || radius <= 0) return out;
  std::vector<Letter> alphabet;
  for (int g = 0; g < rank; ++g) {
    alphabet.push_back(static_cast<Letter>(g + 1));
    alphabet.push_back(static_cast<Letter>(-(g + 1)));
  }
  std::size_t layer_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Letter l : alphabet) {
        const auto& base = out[i].letters();
        if (!base.empty() && base.back() == -l) continue;
        out.push_back(out[i] * Word{l});
      }
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(layer_end), out.end());
    layer_begin = layer_end;
  }
  return out;
}

std::size_t count_words_up_to(int rank, int radius) {
  if (rank <= 0 || radius <= 0) return 1;
  std::size_t total = 1;
  std::size_t layer = 2 * static_cast<std::size_t>(rank);
  for (int r = 1; r <= radius; ++r) {
    total += layer;
    layer *= 2 * static_cast<std::size_t>(rank) - 1;
  }
  return total;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint8_t>(l));
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace geuclid
