#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reduction.hpp"

namespace geuclid {

/// Submodule of Z[F]^ambient given by integral generators.
struct ZModuleSpec {
  std::size_t ambient = 0;
  std::vector<RingVector> generators;

  /// Checks shapes and domains, drops zero generators.
  [[nodiscard]] ZModuleSpec pruned() const;
};

RingVector mod_p_reduce(const RingVector& v, std::uint32_t p);

/// Integral coefficients c_j with supports in the R-ball and sum c_j x_j = target.
std::optional<std::vector<RingElement>> solve_membership(const RingVector& target, std::span<const RingVector> gens,
                                                         int R, int rank);

struct StarCertificate {
  std::uint32_t p = 0;
  /// An element of M with every coefficient divisible by p ...
  RingVector m;
  /// ... written as sum combination_j x_j; m / p was not found in M.
  std::vector<RingElement> combination;
};

struct StarReport {
  bool pass = true;
  std::vector<std::uint32_t> primes;
  int radius = 0;
  std::size_t candidates_checked = 0;
  std::optional<StarCertificate> failure;

  /// PASS_UP_TO(primes, R) or FAIL(p, m).
  [[nodiscard]] std::string status_string() const;
};

/// Bounded search for p-torsion in the quotient: elements of M that vanish mod p
/// (from F_p-relations among the reduced generators with supports in the
/// R-ball) whose quotient by p is not in M with supports in the R-ball.
StarReport check_star(const ZModuleSpec& module, std::span<const std::uint32_t> primes, int R, int rank);

enum class BassStatus { Free, IndependentUpTo, StarFailure, Inconclusive };

struct DescentStep {
  mpz_class k_before;
  std::uint32_t p = 0;
  std::size_t kernel_block = 0;  // basis vectors divided by p
  bool containments_verified = false;
};

struct BassResult {
  BassStatus status = BassStatus::Free;
  int r_max = 0;
  std::vector<RingVector> basis;
  mpz_class k0 = 1;
  std::vector<DescentStep> steps;
  std::optional<StarCertificate> star;
  /// basis_i = sum_j membership[i][j] x_j.
  std::vector<std::vector<RingElement>> membership;
  /// x_j = sum_i expansion[j][i] basis_i (at the end, k = 1).
  std::vector<std::vector<RingElement>> expansion;
  std::string note;

  [[nodiscard]] std::string status_string() const;
};

BassResult bass_descent(const ZModuleSpec& module, const ReductionContext& ctx, int r_max = 6);

}  // namespace geuclid
