#include "linalg.hpp"

#include <algorithm>

#include "error.hpp"

namespace geuclid {

namespace {

struct FieldFp {
  using V = std::uint32_t;
  std::uint32_t p;

  [[nodiscard]] V zero() const { return 0; }
  [[nodiscard]] bool is_zero(V a) const { return a == 0; }
  [[nodiscard]] V sub(V a, V b) const { return a >= b ? a - b : a + (p - b); }
  [[nodiscard]] V mul(V a, V b) const { return static_cast<V>(std::uint64_t{a} * b % p); }
  [[nodiscard]] V inv(V a) const {
    std::uint64_t r = 1;
    std::uint64_t b = a;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1U) r = r * b % p;
      b = b * b % p;
      e >>= 1U;
    }
    return static_cast<V>(r);
  }
  [[nodiscard]] V from(const Scalar& s) const { return s.residue(); }
  [[nodiscard]] Scalar to(V a, Domain d) const { return Scalar(d, static_cast<long>(a)); }
};

struct FieldQ {
  using V = mpq_class;

  [[nodiscard]] V zero() const { return 0; }
  [[nodiscard]] bool is_zero(const V& a) const { return sgn(a) == 0; }
  [[nodiscard]] V sub(const V& a, const V& b) const { return a - b; }
  [[nodiscard]] V mul(const V& a, const V& b) const { return a * b; }
  [[nodiscard]] V inv(const V& a) const { return 1 / a; }
  [[nodiscard]] V from(const Scalar& s) const { return s.rational(); }
  [[nodiscard]] Scalar to(const V& a, Domain d) const { return Scalar(d, a); }
};

// Incremental semi-echelon basis of the column space. Every stored pivot
// vector has leading row equal to its pivot row with value 1, and carries its
// expression in the original columns when `track` is set.
template <class F>
class Eliminator {
 public:
  using V = typename F::V;
  using Sparse = std::vector<std::pair<std::size_t, V>>;

  Eliminator(F field, std::size_t nrows, std::size_t ncols, bool track)
      : f_(field), ncols_(ncols), track_(track), pivot_of_row_(nrows, -1), work_(nrows, field.zero()) {
    if (track_) comb_.assign(ncols, field.zero());
  }

  // Reduces `column` (index `index`, or none for a target). Returns true when
  // it was independent and became a new pivot.
  bool add(const Sparse& column, std::optional<std::size_t> index) {
    std::size_t lo = work_.size();
    for (const auto& [r, v] : column) {
      work_[r] = v;
      lo = std::min(lo, r);
    }
    if (track_) {
      comb_touched_.clear();
      if (index) {
        comb_[*index] = V(1);
        comb_touched_.push_back(*index);
      }
    }
    std::optional<std::size_t> lead;
    for (std::size_t r = lo; r < work_.size(); ++r) {
      if (f_.is_zero(work_[r])) continue;
      const int p = pivot_of_row_[r];
      if (p < 0) {
        if (!lead) lead = r;
        continue;
      }
      const V c = work_[r];
      for (const auto& [rr, v] : pivots_[p]) work_[rr] = f_.sub(work_[rr], f_.mul(c, v));
      if (track_) {
        for (const auto& [j, v] : combs_[p]) {
          if (f_.is_zero(comb_[j])) comb_touched_.push_back(j);
          comb_[j] = f_.sub(comb_[j], f_.mul(c, v));
        }
      }
    }
    if (!lead) {
      last_comb_.clear();
      if (track_) {
        std::sort(comb_touched_.begin(), comb_touched_.end());
        comb_touched_.erase(std::unique(comb_touched_.begin(), comb_touched_.end()), comb_touched_.end());
        for (std::size_t j : comb_touched_) {
          if (!f_.is_zero(comb_[j])) last_comb_.emplace_back(j, comb_[j]);
          comb_[j] = f_.zero();
        }
      }
      return false;
    }
    const V scale = f_.inv(work_[*lead]);
    Sparse vec;
    for (std::size_t r = *lead; r < work_.size(); ++r) {
      if (!f_.is_zero(work_[r])) {
        vec.emplace_back(r, f_.mul(scale, work_[r]));
        work_[r] = f_.zero();
      }
    }
    Sparse comb;
    if (track_) {
      std::sort(comb_touched_.begin(), comb_touched_.end());
      comb_touched_.erase(std::unique(comb_touched_.begin(), comb_touched_.end()), comb_touched_.end());
      for (std::size_t j : comb_touched_) {
        if (!f_.is_zero(comb_[j])) comb.emplace_back(j, f_.mul(scale, comb_[j]));
        comb_[j] = f_.zero();
      }
    }
    pivot_of_row_[*lead] = static_cast<int>(pivots_.size());
    pivots_.push_back(std::move(vec));
    combs_.push_back(std::move(comb));
    return true;
  }

  // Combination recorded by the last dependent add(): sum comb_j col_j equals
  // the reduced input minus zero, i.e. input = -sum over pivot combinations.
  [[nodiscard]] const Sparse& last_combination() const { return last_comb_; }
  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }

 private:
  F f_;
  std::size_t ncols_;
  bool track_;
  std::vector<int> pivot_of_row_;
  std::vector<V> work_;
  std::vector<V> comb_;
  std::vector<std::size_t> comb_touched_;
  std::vector<Sparse> pivots_;
  std::vector<Sparse> combs_;
  Sparse last_comb_;
};

template <class F>
typename Eliminator<F>::Sparse convert_column(const F& f, const SparseColumn& col) {
  typename Eliminator<F>::Sparse out;
  out.reserve(col.size());
  for (const auto& [r, s] : col) {
    if (!s.is_zero()) out.emplace_back(r, f.from(s));
  }
  return out;
}

template <class F>
std::optional<std::vector<Scalar>> kernel_impl(const F& f, Domain domain, std::size_t nrows,
                                               const std::vector<SparseColumn>& columns) {
  Eliminator<F> e(f, nrows, columns.size(), true);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (e.add(convert_column(f, columns[j]), j)) continue;
    const auto& comb = e.last_combination();
    std::vector<Scalar> out(columns.size(), Scalar::zero(domain));
    const auto norm = f.inv(comb.front().second);  // comb is sorted by column
    for (const auto& [c, v] : comb) out[c] = f.to(f.mul(norm, v), domain);
    return out;
  }
  return std::nullopt;
}

template <class F>
std::vector<SparseColumn> kernel_basis_impl(const F& f, Domain domain, std::size_t nrows,
                                            const std::vector<SparseColumn>& columns) {
  Eliminator<F> e(f, nrows, columns.size(), true);
  std::vector<SparseColumn> out;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (e.add(convert_column(f, columns[j]), j)) continue;
    SparseColumn rel;
    for (const auto& [c, v] : e.last_combination()) rel.emplace_back(c, f.to(v, domain));
    out.push_back(std::move(rel));
  }
  return out;
}

template <class F>
std::optional<std::vector<Scalar>> solve_impl(const F& f, Domain domain, std::size_t nrows,
                                              const std::vector<SparseColumn>& columns, const SparseColumn& target) {
  Eliminator<F> e(f, nrows, columns.size(), true);
  for (std::size_t j = 0; j < columns.size(); ++j) e.add(convert_column(f, columns[j]), j);
  if (e.add(convert_column(f, target), std::nullopt)) return std::nullopt;
  std::vector<Scalar> out(columns.size(), Scalar::zero(domain));
  for (const auto& [c, v] : e.last_combination()) out[c] = f.to(f.sub(f.zero(), v), domain);
  return out;
}

// Full column rank modulo a large prime certifies independence over Q.
constexpr std::uint32_t kFilterPrime = 2147483647U;

bool independent_mod_prime(std::size_t nrows, const std::vector<SparseColumn>& columns) {
  const FieldFp f{kFilterPrime};
  Eliminator<FieldFp> e(f, nrows, columns.size(), false);
  for (const auto& col : columns) {
    mpz_class lcm = 1;
    for (const auto& [r, s] : col) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.rational().get_den_mpz_t());
    Eliminator<FieldFp>::Sparse sparse;
    for (const auto& [r, s] : col) {
      mpz_class v = s.rational().get_num() * (lcm / s.rational().get_den());
      v %= kFilterPrime;
      if (v < 0) v += kFilterPrime;
      if (v != 0) sparse.emplace_back(r, static_cast<std::uint32_t>(v.get_ui()));
    }
    if (!e.add(sparse, std::nullopt)) return false;
  }
  return true;
}

void require_field(Domain d) {
  if (!d.is_field()) throw Error(ErrorCode::Unsupported, "field linear algebra over " + d.name());
}

}  // namespace

std::optional<std::vector<Scalar>> first_kernel_vector(Domain domain, std::size_t nrows,
                                                       const std::vector<SparseColumn>& columns) {
  require_field(domain);
  if (domain.kind == DomainKind::FiniteField) return kernel_impl(FieldFp{domain.p}, domain, nrows, columns);
  if (independent_mod_prime(nrows, columns)) return std::nullopt;
  return kernel_impl(FieldQ{}, domain, nrows, columns);
}

std::vector<SparseColumn> kernel_basis(Domain domain, std::size_t nrows, const std::vector<SparseColumn>& columns) {
  require_field(domain);
  if (domain.kind == DomainKind::FiniteField) return kernel_basis_impl(FieldFp{domain.p}, domain, nrows, columns);
  return kernel_basis_impl(FieldQ{}, domain, nrows, columns);
}

std::optional<std::vector<Scalar>> solve_field(Domain domain, std::size_t nrows, const std::vector<SparseColumn>& columns,
                                               const SparseColumn& target) {
  require_field(domain);
  if (domain.kind == DomainKind::FiniteField) return solve_impl(FieldFp{domain.p}, domain, nrows, columns, target);
  return solve_impl(FieldQ{}, domain, nrows, columns, target);
}

std::size_t column_rank(Domain domain, std::size_t nrows, const std::vector<SparseColumn>& columns) {
  require_field(domain);
  if (domain.kind == DomainKind::FiniteField) {
    const FieldFp f{domain.p};
    Eliminator<FieldFp> e(f, nrows, columns.size(), false);
    for (const auto& c : columns) e.add(convert_column(f, c), std::nullopt);
    return e.rank();
  }
  const FieldQ f;
  Eliminator<FieldQ> e(f, nrows, columns.size(), false);
  for (const auto& c : columns) e.add(convert_column(f, c), std::nullopt);
  return e.rank();
}

std::optional<std::vector<mpz_class>> solve_integer(std::size_t nrows, const std::vector<IntColumn>& columns,
                                                    const IntColumn& target) {
  const std::size_t n = columns.size();
  std::vector<std::vector<mpz_class>> h(n, std::vector<mpz_class>(nrows));  // h[j][r]
  std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n));      // u[j] = column j of U
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [r, v] : columns[j]) h[j][r] = v;
    u[j][j] = 1;
  }
  auto combine = [&](std::size_t k, std::size_t j, const mpz_class& a, const mpz_class& b, const mpz_class& c,
                     const mpz_class& d) {
    // (col_k, col_j) <- (a col_k + b col_j, c col_k + d col_j), ad - bc = 1.
    for (auto* m : {&h, &u}) {
      auto& ck = (*m)[k];
      auto& cj = (*m)[j];
      for (std::size_t r = 0; r < ck.size(); ++r) {
        mpz_class x = a * ck[r] + b * cj[r];
        mpz_class y = c * ck[r] + d * cj[r];
        ck[r] = std::move(x);
        cj[r] = std::move(y);
      }
    }
  };
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
  std::size_t k = 0;
  for (std::size_t r = 0; r < nrows && k < n; ++r) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (h[j][r] == 0) continue;
      mpz_class g;
      mpz_class s;
      mpz_class t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[k][r].get_mpz_t(), h[j][r].get_mpz_t());
      const mpz_class a = h[k][r] / g;
      const mpz_class b = h[j][r] / g;
      combine(k, j, s, t, mpz_class(-b), a);
    }
    if (h[k][r] != 0) {
      pivots.emplace_back(r, k);
      ++k;
    }
  }
  std::vector<mpz_class> residual(nrows);
  for (const auto& [r, v] : target) residual[r] = v;
  std::vector<mpz_class> y(n);
  std::size_t next = 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    if (next < pivots.size() && pivots[next].first == r) {
      const std::size_t col = pivots[next].second;
      ++next;
      if (!mpz_divisible_p(residual[r].get_mpz_t(), h[col][r].get_mpz_t())) return std::nullopt;
      y[col] = residual[r] / h[col][r];
      if (y[col] != 0) {
        for (std::size_t rr = r; rr < nrows; ++rr) residual[rr] -= y[col] * h[col][rr];
      }
    } else if (residual[r] != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (y[j] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) x[i] += u[j][i] * y[j];
  }
  return x;
}

}  // namespace geuclid
