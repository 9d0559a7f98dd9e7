#include "random.hpp"

#include "error.hpp"

namespace geuclid {

Rng::Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32U),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32U)};
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Word random_word(Rng& rng, int rank, int length) {
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(length));
  for (int k = 0; k < length; ++k) {
    // 2*rank letters, minus the inverse of the previous one.
    const std::uint64_t choices = letters.empty() ? 2U * rank : 2U * rank - 1U;
    std::uint64_t pick = rng.below(choices);
    Letter l = 0;
    for (int g = 0; g < rank; ++g) {
      for (int s = 0; s < 2; ++s) {
        const auto cand = static_cast<Letter>(s == 0 ? g + 1 : -(g + 1));
        if (!letters.empty() && cand == -letters.back()) continue;
        if (pick-- == 0) l = cand;
      }
    }
    letters.push_back(l);
  }
  return Word::reduce(std::move(letters));
}

Word random_word_up_to(Rng& rng, int rank, int max_length) {
  return random_word(rng, rank, static_cast<int>(rng.below(static_cast<std::uint64_t>(max_length) + 1)));
}

Scalar random_nonzero_scalar(Rng& rng, Domain domain) {
  switch (domain.kind) {
    case DomainKind::FiniteField:
      return Scalar(domain, static_cast<long>(1 + rng.below(domain.p - 1)));
    case DomainKind::Rational: {
      const long num = static_cast<long>(rng.between(1, 5)) * (rng.coin() ? 1 : -1);
      const long den = static_cast<long>(rng.between(1, 3));
      return Scalar(domain, mpq_class(num, den));
    }
    case DomainKind::Integer:
      return Scalar(domain, static_cast<long>(rng.between(1, 5)) * (rng.coin() ? 1 : -1));
  }
  return Scalar::one(domain);
}

RingElement random_element(Rng& rng, Domain domain, int rank, int max_terms, int radius) {
  const int terms = static_cast<int>(rng.between(1, max_terms));
  std::vector<Term> out;
  for (int k = 0; k < terms; ++k) out.emplace_back(random_word_up_to(rng, rank, radius), random_nonzero_scalar(rng, domain));
  RingElement x = RingElement::from_terms(domain, std::move(out));
  if (x.is_zero()) x = RingElement::monomial(random_nonzero_scalar(rng, domain), random_word_up_to(rng, rank, radius));
  return x;
}

RingElement random_positive_element(Rng& rng, Domain domain, int rank, int max_terms, int radius) {
  const int terms = static_cast<int>(rng.between(1, max_terms));
  std::vector<Term> out;
  for (int k = 0; k < terms; ++k) {
    const int len = static_cast<int>(rng.between(0, radius));
    std::vector<std::int8_t> letters;
    for (int i = 0; i < len; ++i) letters.push_back(static_cast<std::int8_t>(rng.between(1, rank)));
    out.emplace_back(Word::reduce(std::move(letters)), random_nonzero_scalar(rng, domain));
  }
  RingElement x = RingElement::from_terms(domain, std::move(out));
  if (x.is_zero()) x = RingElement::one(domain);
  return x;
}

void random_relation(Rng& rng, Domain domain, int rank, int n, int radius, std::vector<RingElement>& xi,
                     std::vector<RingElement>& alpha) {
  if (n < 1) throw Error(ErrorCode::Precondition, "a relation needs at least one entry");
  xi.clear();
  alpha.clear();
  RingElement acc(domain);
  for (int i = 0; i + 1 < n; ++i) {
    xi.push_back(random_element(rng, domain, rank, 3, radius));
    alpha.push_back(random_element(rng, domain, rank, 2, radius));
    acc += alpha.back() * xi.back();
  }
  const Scalar lambda = random_nonzero_scalar(rng, domain);
  const Word g = random_word_up_to(rng, rank, 1);
  alpha.push_back(RingElement::monomial(lambda, g));
  xi.push_back(-(acc.translated(g.inverse()).scaled(lambda.inverse())));
}

}  // namespace geuclid
