#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extremal_graph.hpp"
#include "ring_element.hpp"
#include "space.hpp"
#include "transform_log.hpp"

namespace geuclid {

/// delta_0 = 0, delta_k = delta_{k-1} + (2k+9) delta.
struct ReductionConstants {
  Length delta{0};
  int n = 0;
  std::vector<Length> ladder;  // ladder[k] = delta_k, k = 0..n

  static ReductionConstants make(Length delta, int n);
  [[nodiscard]] Length delta_n() const { return ladder.back(); }
  [[nodiscard]] Length at(int k) const { return ladder.at(static_cast<std::size_t>(k)); }
};

struct ReductionOptions {
  /// Proceed even when the oracle fails the displacement hypothesis.
  bool unsafe = false;
  /// Use the general-delta path on trees too (testing aid).
  bool force_general = false;
  std::size_t max_rounds = 100000;
};

/// Oracle plus options; caches the displacement needed by hypothesis checks.
class ReductionContext {
 public:
  explicit ReductionContext(const SpaceOracle& oracle, ReductionOptions options = {})
      : oracle_(&oracle), options_(options) {}

  [[nodiscard]] const SpaceOracle& oracle() const noexcept { return *oracle_; }
  [[nodiscard]] const ReductionOptions& options() const noexcept { return options_; }
  [[nodiscard]] HypothesisReport hypothesis(int n) const;
  /// Throws HypothesisNotMet unless the hypothesis holds for n or unsafe mode is on.
  void require_hypothesis(int n) const;

 private:
  const SpaceOracle* oracle_;
  ReductionOptions options_;
  mutable std::optional<Length> displacement_;
};

enum class StepPath { SameColor, Tree, General };
const char* step_path_name(StepPath path) noexcept;

struct ReductionStep {
  StepPath path = StepPath::Tree;
  /// Original index whose entry is replaced.
  std::size_t target = 0;
  /// Family member playing v_* (same-color steps: the member of the target).
  std::size_t v_star = 0;
  std::vector<std::size_t> S;
  std::size_t replaced_color = 0;
  /// Per original index: the sub-sum of alpha_i over the members of S.
  std::vector<RingElement> beta;
  /// New value of entry `target`: (c g*)^-1 (xi_{v*} + sum_S xi_v).
  RingElement result;
  Extended diam_before;
  Extended diam_after;
  /// The column operation as log entries (E i target beta'_i).
  TransformationLog log;
  ReductionConstants constants;
  Family family;
  std::vector<std::string> diagnostics;
};

/// Nonzero alpha with supports in the R-ball and sum alpha_i xi_i = 0, found
/// as the first kernel vector of the linear system with unknowns ordered by
/// (i, shortlex g). Field domains only.
std::optional<std::vector<RingElement>> find_dependence(std::span<const RingElement> xi, int R, int rank);
/// Vector version: sum alpha_i v_i = 0 in every coordinate.
std::optional<std::vector<RingElement>> find_vector_dependence(std::span<const RingVector> vs, int R, int rank);

ReductionStep reduce_step(std::span<const RingElement> xi, std::span<const RingElement> alpha,
                          const ReductionContext& ctx);

/// alpha'_i = alpha_i - alpha_j * x for every logged E i j x, etc., so that
/// alpha' . (xi replayed) equals alpha . xi.
void transform_coefficients(const TransformationLog& log, std::vector<RingElement>& alpha);

struct EliminationResult {
  TransformationLog log;
  std::vector<RingElement> xi;
  std::vector<RingElement> alpha;
  std::vector<ReductionStep> steps;
};

/// Elementary operations producing a zero entry from an exact relation.
EliminationResult zero_coordinate(std::span<const RingElement> xi, std::span<const RingElement> alpha,
                                  const ReductionContext& ctx);

struct NormalizationResult {
  TransformationLog log;
  std::vector<RingElement> xi;  // (lambda g, 0, ..., 0)
  Scalar lambda;
  Word g;
  std::vector<ReductionStep> steps;
};

/// From alpha . xi = 1 to (lambda g, 0, ..., 0).
NormalizationResult normalize_unimodular(std::span<const RingElement> xi, std::span<const RingElement> alpha,
                                         const ReductionContext& ctx);

enum class BasisStatus { VerifiedFree, IndependentUpTo };

struct SearchRecord {
  std::size_t generators = 0;
  int radius = 0;
  bool found = false;
};

struct BasisResult {
  BasisStatus status = BasisStatus::VerifiedFree;
  int r_max = 0;
  std::vector<RingElement> basis;
  std::vector<RingVector> vector_basis;
  /// Acts on the input slots; zero slots at the end are dropped from the basis.
  TransformationLog log;
  std::vector<RingElement> final_slots;
  std::vector<RingVector> final_vector_slots;
  std::vector<SearchRecord> searches;
  std::size_t reduction_steps = 0;

  [[nodiscard]] std::string status_string() const;
};

BasisResult ideal_basis(std::span<const RingElement> generators, const ReductionContext& ctx, int r_max = 6);
BasisResult submodule_basis(std::span<const RingVector> vectors, const ReductionContext& ctx, int r_max = 6);

using RingMatrix = std::vector<RingVector>;  // rows

RingMatrix identity_matrix(Domain d, std::size_t n);
RingMatrix multiply(const RingMatrix& x, const RingMatrix& y);
/// The product encoded by a log: its replay on the identity rows.
RingMatrix log_product(const TransformationLog& log, Domain d, std::size_t n);

struct GeFactorResult {
  /// Replaying on the identity rows gives X.
  TransformationLog log;
  std::vector<ReductionStep> steps;
};

/// Factor X into elementary and diagonal (trivial-unit) matrices given A with AX = 1.
GeFactorResult ge_factor(const RingMatrix& X, const RingMatrix& A, const ReductionContext& ctx);

}  // namespace geuclid
