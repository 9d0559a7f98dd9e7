#include "doctest.h"

#include "error.hpp"
#include "grammar.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "transform_log.hpp"

using namespace geuclid;

namespace {

// Dense F_p matrix as columns, for brute-force comparison.
using Dense = std::vector<std::vector<std::uint32_t>>;

std::vector<SparseColumn> to_sparse(const Dense& cols, Domain d) {
  std::vector<SparseColumn> out;
  for (const auto& c : cols) {
    SparseColumn s;
    for (std::size_t r = 0; r < c.size(); ++r) {
      if (c[r]) s.emplace_back(r, Scalar(d, static_cast<long>(c[r])));
    }
    out.push_back(s);
  }
  return out;
}

// Smallest f such that columns 0..f are dependent, by enumerating all
// coefficient vectors over F_2.
std::optional<std::size_t> brute_first_dependent(const Dense& cols, std::size_t nrows) {
  for (std::size_t f = 0; f < cols.size(); ++f) {
    for (std::uint32_t mask = 1; mask < (1U << (f + 1)); ++mask) {
      bool zero = true;
      for (std::size_t r = 0; r < nrows && zero; ++r) {
        std::uint32_t s = 0;
        for (std::size_t j = 0; j <= f; ++j) {
          if (mask & (1U << j)) s ^= cols[j][r];
        }
        zero = s == 0;
      }
      if (zero) return f;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("kernel search agrees with brute force over F2") {
  const Domain F2 = Domain::finite_field(2);
  Rng rng(41);
  for (int t = 0; t < 300; ++t) {
    const std::size_t nrows = 1 + rng.below(5);
    const std::size_t ncols = 1 + rng.below(6);
    Dense cols(ncols, std::vector<std::uint32_t>(nrows));
    for (auto& c : cols) {
      for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(2));
    }
    const auto k = first_kernel_vector(F2, nrows, to_sparse(cols, F2));
    const auto f = brute_first_dependent(cols, nrows);
    REQUIRE(k.has_value() == f.has_value());
    if (!k) continue;
    std::size_t last = 0;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!(*k)[j].is_zero()) last = j;
    }
    CHECK(last == *f);
    for (std::size_t r = 0; r < nrows; ++r) {
      std::uint32_t s = 0;
      for (std::size_t j = 0; j < ncols; ++j) s ^= (*k)[j].residue() * cols[j][r];
      CHECK(s == 0);
    }
  }
}

TEST_CASE("rational kernel and solve") {
  const Domain Q = Domain::rationals();
  auto col = [&](std::initializer_list<long> xs) {
    SparseColumn c;
    std::size_t r = 0;
    for (long x : xs) {
      if (x) c.emplace_back(r, Scalar(Q, x));
      ++r;
    }
    return c;
  };
  const std::vector<SparseColumn> cols{col({1, 2, 0}), col({0, 1, 1}), col({2, 5, 1})};
  const auto k = first_kernel_vector(Q, 3, cols);
  REQUIRE(k.has_value());
  CHECK((*k)[0] == Scalar(Q, 1L));
  CHECK((*k)[1] == Scalar(Q, mpq_class(1, 2)));
  CHECK((*k)[2] == Scalar(Q, mpq_class(-1, 2)));
  CHECK_FALSE(first_kernel_vector(Q, 3, {cols[0], cols[1]}).has_value());
  CHECK(column_rank(Q, 3, cols) == 2);

  const auto x = solve_field(Q, 3, {cols[0], cols[1]}, col({3, 7, 1}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Scalar(Q, 3L));
  CHECK((*x)[1] == Scalar(Q, 1L));
  CHECK_FALSE(solve_field(Q, 3, {cols[0], cols[1]}, col({0, 0, 1})).has_value());
}

TEST_CASE("integer solve") {
  auto col = [](std::initializer_list<long> xs) {
    IntColumn c;
    std::size_t r = 0;
    for (long x : xs) {
      if (x) c.emplace_back(r, mpz_class(x));
      ++r;
    }
    return c;
  };
  // 2x = 1 has no integer solution; 2x + 3y = 1 does.
  CHECK_FALSE(solve_integer(1, {col({2})}, col({1})).has_value());
  const auto s = solve_integer(1, {col({2}), col({3})}, col({1}));
  REQUIRE(s.has_value());
  CHECK(2 * (*s)[0] + 3 * (*s)[1] == 1);

  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const std::size_t nrows = 1 + rng.below(4);
    const std::size_t ncols = 1 + rng.below(4);
    std::vector<std::vector<long>> a(ncols, std::vector<long>(nrows));
    for (auto& c : a) {
      for (auto& v : c) v = static_cast<long>(rng.between(-3, 3));
    }
    std::vector<long> b(nrows);
    for (auto& v : b) v = static_cast<long>(rng.between(-4, 4));
    std::vector<IntColumn> cols;
    for (const auto& c : a) {
      IntColumn ic;
      for (std::size_t r = 0; r < nrows; ++r) {
        if (c[r]) ic.emplace_back(r, mpz_class(c[r]));
      }
      cols.push_back(ic);
    }
    IntColumn target;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (b[r]) target.emplace_back(r, mpz_class(b[r]));
    }
    const auto x = solve_integer(nrows, cols, target);
    // Brute force over a box of candidate solutions.
    bool found = false;
    std::vector<long> y(ncols, -6);
    while (true) {
      bool ok = true;
      for (std::size_t r = 0; r < nrows && ok; ++r) {
        long s = 0;
        for (std::size_t j = 0; j < ncols; ++j) s += a[j][r] * y[j];
        ok = s == b[r];
      }
      if (ok) {
        found = true;
        break;
      }
      std::size_t j = 0;
      while (j < ncols && y[j] == 6) y[j++] = -6;
      if (j == ncols) break;
      ++y[j];
    }
    if (found) CHECK(x.has_value());
    if (x) {
      for (std::size_t r = 0; r < nrows; ++r) {
        mpz_class s = 0;
        for (std::size_t j = 0; j < ncols; ++j) s += a[j][r] * (*x)[j];
        CHECK(s == b[r]);
      }
    }
  }
}

TEST_CASE("transformation log serialization and replay") {
  const Domain Q = Domain::rationals();
  TransformationLog log;
  log.push(LogOp::elementary(0, 1, parse_element("-b", Q)));
  log.push(LogOp::diagonal(1, Scalar(Q, mpq_class(2, 3)), parse_word("a")));
  log.push(LogOp::permute(0, 1));
  const std::string text = log.to_string();
  CHECK(text == "E 0 1 -b\nD 1 2/3 a\nP 0 1\n");
  const auto again = TransformationLog::parse("# comment\n" + text, Q);
  CHECK(again.to_string() == text);

  std::vector<RingElement> slots{parse_element("1+a", Q), parse_element("1+a+b+ba", Q)};
  const auto original = slots;
  log.replay(slots);
  CHECK(slots[0] == parse_element("2/3*a+2/3*aa", Q));
  CHECK(slots[1] == parse_element("1+a", Q));
  log.replay_inverse(slots);
  CHECK(slots == original);

  CHECK_THROWS_AS(TransformationLog::parse("E 0 0 a\n", Q), ParseError);
  CHECK_THROWS_AS(TransformationLog::parse("X 0 1\n", Q), ParseError);
  CHECK_THROWS_AS(TransformationLog::parse("D 0 0 a\n", Q), ParseError);
  std::vector<RingElement> one{parse_element("1", Q)};
  CHECK_THROWS_AS(log.replay(one), Error);
}
