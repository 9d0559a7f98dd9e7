#pragma once

#include <cstdint>
#include <random>

#include "ring_element.hpp"

namespace geuclid {

/// Seeded generator with a portable bounded draw (the standard distributions
/// are implementation-defined, which would break cross-platform replays).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Stream keyed by (seed, a, b), independent of draw order elsewhere.
  Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Reduced word of exactly `length` letters, each letter drawn among those
/// that do not cancel the previous one.
Word random_word(Rng& rng, int rank, int length);
/// Reduced word with length uniform in [0, max_length].
Word random_word_up_to(Rng& rng, int rank, int max_length);
/// Nonzero scalar (F_p residue, or small integer / rational numerator).
Scalar random_nonzero_scalar(Rng& rng, Domain domain);
/// Element with 1..max_terms support words of length <= radius.
RingElement random_element(Rng& rng, Domain domain, int rank, int max_terms, int radius);
/// Element supported on positive words (no inverse letters).
RingElement random_positive_element(Rng& rng, Domain domain, int rank, int max_terms, int radius);

/// Exact relation sum alpha_i xi_i = 0 with n entries: the first n-1 pairs are
/// random (supports within `radius`), alpha_n is a trivial unit of length <= 1
/// and xi_n is forced by the relation.
void random_relation(Rng& rng, Domain domain, int rank, int n, int radius, std::vector<RingElement>& xi,
                     std::vector<RingElement>& alpha);

}  // namespace geuclid
