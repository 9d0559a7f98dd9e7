#include "bass.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "error.hpp"
#include "linalg.hpp"

namespace geuclid {

namespace {

const Domain kZ = Domain::integers();
const Domain kQ = Domain::rationals();

RingVector convert(const RingVector& v, Domain d) {
  RingVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.convert(d));
  return out;
}

RingVector zero_vector(Domain d, std::size_t m) { return RingVector(m, RingElement::zero(d)); }

// Lift F_p coefficients to representatives 0..p-1.
RingElement lift(const RingElement& x) {
  std::vector<Term> terms;
  for (const auto& [w, s] : x.terms()) terms.emplace_back(w, Scalar(kZ, mpz_class(s.residue())));
  return RingElement::from_terms(kZ, std::move(terms));
}

TransformationLog lift(const TransformationLog& log) {
  TransformationLog out;
  for (const auto& op : log.ops()) {
    switch (op.kind) {
      case LogOp::Kind::Elementary:
        out.push(LogOp::elementary(op.i, op.j, lift(op.factor)));
        break;
      case LogOp::Kind::Permute:
        out.push(LogOp::permute(op.i, op.j));
        break;
      case LogOp::Kind::Diagonal: {
        // Only +-1 lifts to a unit of Z.
        const auto& [w, s] = op.factor.terms().front();
        const std::uint32_t p = s.domain().p;
        if (s.residue() == 1) {
          out.push(LogOp::diagonal(op.i, Scalar::one(kZ), w));
        } else if (s.residue() == p - 1) {
          out.push(LogOp::diagonal(op.i, Scalar(kZ, -1L), w));
        } else {
          throw Error(ErrorCode::Unsupported, "diagonal factor has no integral lift");
        }
        break;
      }
    }
  }
  return out;
}

mpz_class lcm_denominators(const RingElement& x) {
  mpz_class l = 1;
  for (const auto& [w, s] : x.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
  return l;
}

RingElement scale_to_z(const RingElement& x, const mpq_class& c) {
  std::vector<Term> terms;
  for (const auto& [w, s] : x.terms()) {
    mpq_class v = s.rational() * c;
    v.canonicalize();
    if (v.get_den() != 1) throw Error(ErrorCode::Internal, "denominator survived clearing");
    terms.emplace_back(w, Scalar(kZ, mpz_class(v.get_num())));
  }
  return RingElement::from_terms(kZ, std::move(terms));
}

std::optional<RingElement> divide_exact(const RingElement& x, std::uint32_t p) {
  std::vector<Term> terms;
  const mpz_class pp = p;
  for (const auto& [w, s] : x.terms()) {
    const mpz_class v = s.rational().get_num();
    if (v % pp != 0) return std::nullopt;
    terms.emplace_back(w, Scalar(kZ, mpz_class(v / pp)));
  }
  return RingElement::from_terms(kZ, std::move(terms));
}

std::optional<RingVector> divide_exact(const RingVector& v, std::uint32_t p) {
  RingVector out;
  for (const auto& x : v) {
    auto q = divide_exact(x, p);
    if (!q) return std::nullopt;
    out.push_back(std::move(*q));
  }
  return out;
}

RingVector combine(std::span<const RingElement> coeffs, std::span<const RingVector> vs, std::size_t m) {
  RingVector out = zero_vector(kZ, m);
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (coeffs[j].is_zero()) continue;
    out = add(out, left_mul(coeffs[j], vs[j]));
  }
  return out;
}

int max_word_length(std::span<const RingElement> xs) {
  int best = 0;
  for (const auto& x : xs) {
    const Extended l = x.word_length();
    if (l.is_finite()) best = std::max(best, boost::rational_cast<int>(l.value()));
  }
  return best;
}

std::uint32_t smallest_prime_factor(const mpz_class& k) {
  for (std::uint32_t q = 2;; ++q) {
    if (mpz_class(q) * q > k) {
      if (!k.fits_uint_p()) throw Error(ErrorCode::Resource, "denominator has a large prime factor");
      return static_cast<std::uint32_t>(k.get_ui());
    }
    if (mpz_divisible_ui_p(k.get_mpz_t(), q) != 0) return q;
  }
}

// y_i = sum_j t_ij x_j and k x_j = sum_i w_ji y_i, exactly.
bool containments_hold(std::span<const RingVector> x, std::span<const RingVector> y,
                       const std::vector<std::vector<RingElement>>& t, const std::vector<std::vector<RingElement>>& w,
                       const mpz_class& k, std::size_t m) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(combine(t[i], x, m) == y[i])) return false;
  }
  const RingElement kk = RingElement::monomial(Scalar(kZ, k), Word{});
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(combine(w[j], y, m) == left_mul(kk, x[j]))) return false;
  }
  return true;
}

}  // namespace

ZModuleSpec ZModuleSpec::pruned() const {
  if (ambient == 0) throw Error(ErrorCode::Precondition, "module needs a positive ambient rank");
  ZModuleSpec out{ambient, {}};
  for (const auto& v : generators) {
    if (v.size() != ambient) throw Error(ErrorCode::Precondition, "generator length differs from ambient rank");
    for (const auto& x : v) {
      if (!(x.domain() == kZ)) throw Error(ErrorCode::DomainMismatch, "module generators must be integral");
    }
    if (!is_zero(v)) out.generators.push_back(v);
  }
  return out;
}

RingVector mod_p_reduce(const RingVector& v, std::uint32_t p) {
  RingVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(mod_p_reduce(x, p));
  return out;
}

std::optional<std::vector<RingElement>> solve_membership(const RingVector& target, std::span<const RingVector> gens,
                                                         int R, int rank) {
  const std::size_t m = target.size();
  if (gens.empty()) {
    if (is_zero(target)) return std::vector<RingElement>{};
    return std::nullopt;
  }
  const auto words = words_up_to(rank, R);
  std::vector<std::unordered_map<Word, std::size_t, WordHash>> rows(m);
  std::size_t nrows = 0;
  auto row = [&](std::size_t c, const Word& w) {
    auto [it, fresh] = rows[c].try_emplace(w, nrows);
    if (fresh) ++nrows;
    return it->second;
  };
  std::vector<IntColumn> columns;
  for (const auto& v : gens) {
    for (const auto& g : words) {
      IntColumn col;
      for (std::size_t c = 0; c < m; ++c) {
        for (const auto& [w, s] : v[c].terms()) col.emplace_back(row(c, g * w), s.rational().get_num());
      }
      columns.push_back(std::move(col));
    }
  }
  IntColumn rhs;
  for (std::size_t c = 0; c < m; ++c) {
    for (const auto& [w, s] : target[c].terms()) rhs.emplace_back(row(c, w), s.rational().get_num());
  }
  const auto sol = solve_integer(nrows, columns, rhs);
  if (!sol) return std::nullopt;
  std::vector<RingElement> out;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const mpz_class& v = (*sol)[j * words.size() + k];
      if (v != 0) terms.emplace_back(words[k], Scalar(kZ, v));
    }
    out.push_back(RingElement::from_terms(kZ, std::move(terms)));
  }
  return out;
}

std::string StarReport::status_string() const {
  std::ostringstream os;
  if (failure) {
    os << "FAIL(" << failure->p << ", " << to_string(failure->m) << ")";
    return os.str();
  }
  os << "PASS_UP_TO({";
  for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i];
  os << "}, " << radius << ")";
  return os.str();
}

StarReport check_star(const ZModuleSpec& module, std::span<const std::uint32_t> primes, int R, int rank) {
  const ZModuleSpec mod = module.pruned();
  StarReport report;
  report.primes.assign(primes.begin(), primes.end());
  report.radius = R;
  const std::size_t m = mod.ambient;
  const auto words = words_up_to(rank, R);
  for (const std::uint32_t p : primes) {
    if (!is_prime(p)) throw Error(ErrorCode::Precondition, "star check needs primes");
    const Domain fp = Domain::finite_field(p);
    std::vector<RingVector> reduced;
    for (const auto& v : mod.generators) reduced.push_back(mod_p_reduce(v, p));

    std::vector<std::unordered_map<Word, std::size_t, WordHash>> rows(m);
    std::size_t nrows = 0;
    std::vector<SparseColumn> columns;
    for (const auto& v : reduced) {
      for (const auto& g : words) {
        SparseColumn col;
        for (std::size_t c = 0; c < m; ++c) {
          for (const auto& [w, s] : v[c].terms()) {
            auto [it, fresh] = rows[c].try_emplace(g * w, nrows);
            if (fresh) ++nrows;
            col.emplace_back(it->second, s);
          }
        }
        columns.push_back(std::move(col));
      }
    }
    for (const auto& rel : kernel_basis(fp, nrows, columns)) {
      std::vector<std::vector<Term>> terms(mod.generators.size());
      for (const auto& [idx, s] : rel) {
        terms[idx / words.size()].emplace_back(words[idx % words.size()], Scalar(kZ, mpz_class(s.residue())));
      }
      std::vector<RingElement> comb;
      for (auto& t : terms) comb.push_back(RingElement::from_terms(kZ, std::move(t)));
      const RingVector mv = combine(comb, mod.generators, m);
      ++report.candidates_checked;
      const auto quotient = divide_exact(mv, p);
      if (!quotient) throw Error(ErrorCode::Internal, "lifted relation is not divisible by p");
      if (!solve_membership(*quotient, mod.generators, R, rank)) {
        report.pass = false;
        report.failure = StarCertificate{p, mv, std::move(comb)};
        return report;
      }
    }
  }
  return report;
}

std::string BassResult::status_string() const {
  switch (status) {
    case BassStatus::Free:
      return "VERIFIED_FREE";
    case BassStatus::IndependentUpTo:
      return "INDEPENDENT_UP_TO(" + std::to_string(r_max) + ")";
    case BassStatus::StarFailure: {
      std::ostringstream os;
      os << "STAR_FAILURE(" << star->p << ", " << to_string(star->m) << ")";
      return os.str();
    }
    case BassStatus::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

BassResult bass_descent(const ZModuleSpec& module, const ReductionContext& ctx, int r_max) {
  const ZModuleSpec mod = module.pruned();
  const std::size_t m = mod.ambient;
  const std::size_t n = mod.generators.size();
  const int rank = ctx.oracle().rank();
  const auto& x = mod.generators;
  BassResult result;
  result.r_max = r_max;
  if (n == 0) return result;

  auto identity_coeffs = [&](std::size_t size) {
    std::vector<std::vector<RingElement>> id(size, std::vector<RingElement>(size, RingElement::zero(kZ)));
    for (std::size_t i = 0; i < size; ++i) id[i][i] = RingElement::one(kZ);
    return id;
  };

  // Rational basis, then clear denominators.
  std::vector<RingVector> xq;
  for (const auto& v : x) xq.push_back(convert(v, kQ));
  const BasisResult qres = submodule_basis(xq, ctx, r_max);
  if (qres.status == BasisStatus::IndependentUpTo) {
    result.status = BassStatus::IndependentUpTo;
    result.basis = x;
    result.membership = identity_coeffs(n);
    result.expansion = identity_coeffs(n);
    result.note = "no rational dependence among the generators up to the search radius";
    return result;
  }
  const RingMatrix U = log_product(qres.log, kQ, n);
  const RingMatrix V = log_product(qres.log.inverse(), kQ, n);

  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_zero(qres.final_vector_slots[i])) slots.push_back(i);
  }
  std::vector<RingVector> y;
  std::vector<std::vector<RingElement>> t;
  std::vector<mpz_class> d;
  for (const std::size_t i : slots) {
    mpz_class di = 1;
    for (const auto& u : U[i]) mpz_lcm(di.get_mpz_t(), di.get_mpz_t(), lcm_denominators(u).get_mpz_t());
    d.push_back(di);
    RingVector yi;
    for (const auto& c : qres.final_vector_slots[i]) yi.push_back(scale_to_z(c, mpq_class(di)));
    y.push_back(std::move(yi));
    std::vector<RingElement> ti;
    for (const auto& u : U[i]) ti.push_back(scale_to_z(u, mpq_class(di)));
    t.push_back(std::move(ti));
  }
  // x_j = sum_i V_ji final_i = sum_i (V_ji / d_i) y_i.
  mpz_class k = 1;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const RingElement v = V[j][slots[s]].scaled(Scalar(kQ, mpq_class(1, d[s])));
      mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), lcm_denominators(v).get_mpz_t());
    }
  }
  std::vector<std::vector<RingElement>> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t s = 0; s < slots.size(); ++s) {
      w[j].push_back(scale_to_z(V[j][slots[s]], mpq_class(k, d[s])));
    }
  }
  if (!containments_hold(x, y, t, w, k, m)) throw Error(ErrorCode::Internal, "rational basis fails containment");
  result.k0 = k;

  while (k > 1) {
    const std::uint32_t p = smallest_prime_factor(k);
    const std::uint32_t plist[] = {p};
    StarReport star = check_star(mod, plist, r_max, rank);
    if (!star.pass) {
      result.status = BassStatus::StarFailure;
      result.star = std::move(star.failure);
      result.note = "reduction mod p has torsion the descent cannot remove";
      return result;
    }
    DescentStep step;
    step.k_before = k;
    step.p = p;

    std::vector<RingVector> ybar;
    for (const auto& v : y) ybar.push_back(mod_p_reduce(v, p));
    const BasisResult pres = submodule_basis(ybar, ctx, r_max);
    const TransformationLog lifted = lift(pres.log);
    lifted.replay(y);
    {
      // t rows transform exactly like y.
      std::vector<RingVector> trows(t.begin(), t.end());
      lifted.replay(trows);
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = trows[i];
    }
    for (auto& wj : w) transform_coefficients(lifted, wj);

    std::vector<bool> in_kernel(y.size(), false);
    for (std::size_t i = 0; i < y.size(); ++i) in_kernel[i] = is_zero(pres.final_vector_slots[i]);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!in_kernel[i]) continue;
      auto q = divide_exact(y[i], p);
      if (!q) throw Error(ErrorCode::Internal, "lifted kernel vector is not divisible by p");
      y[i] = std::move(*q);
      ++step.kernel_block;
      const int bound = max_word_length(t[i]);
      std::optional<std::vector<RingElement>> ti;
      for (int R = bound; R <= bound + r_max && !ti; ++R) ti = solve_membership(y[i], x, R, rank);
      if (!ti) {
        result.status = BassStatus::Inconclusive;
        result.note = "could not certify y/p in M within the search radius";
        result.basis = y;
        return result;
      }
      t[i] = std::move(*ti);
    }
    for (auto& wj : w) {
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (in_kernel[i]) continue;
        auto q = divide_exact(wj[i], p);
        if (!q) {
          result.status = BassStatus::Inconclusive;
          result.note = "expansion coefficient not divisible by p";
          result.basis = y;
          return result;
        }
        wj[i] = std::move(*q);
      }
    }
    k /= p;
    step.containments_verified = containments_hold(x, y, t, w, k, m);
    if (!step.containments_verified) throw Error(ErrorCode::Internal, "descent step broke containment");
    result.steps.push_back(step);
  }

  result.status = BassStatus::Free;
  result.basis = std::move(y);
  result.membership = std::move(t);
  result.expansion = std::move(w);
  return result;
}

}  // namespace geuclid
