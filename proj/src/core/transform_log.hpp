#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ring_element.hpp"

namespace geuclid {

/// One invertible operation on a list of slots (ring elements or vectors).
/// Slots are 0-based.
///   E i j x : slot_j += x * slot_i   (i != j)
///   D i c g : slot_i  = (c g) * slot_i
///   P i j   : swap slot_i and slot_j
struct LogOp {
  enum class Kind { Elementary, Diagonal, Permute };
  Kind kind = Kind::Elementary;
  std::size_t i = 0;
  std::size_t j = 0;
  RingElement factor;  // E: x; D: c g as a monomial

  static LogOp elementary(std::size_t from, std::size_t to, RingElement x);
  static LogOp diagonal(std::size_t slot, const Scalar& c, const Word& g);
  static LogOp permute(std::size_t a, std::size_t b);

  [[nodiscard]] LogOp inverse() const;
  [[nodiscard]] std::string to_string() const;
};

/// Ordered operation list with forward and inverse replay.
class TransformationLog {
 public:
  TransformationLog() = default;

  void push(LogOp op) { ops_.push_back(std::move(op)); }
  void append(const TransformationLog& other);
  [[nodiscard]] const std::vector<LogOp>& ops() const noexcept { return ops_; }
  [[nodiscard]] bool empty() const noexcept { return ops_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }

  /// The log undoing this one (reversed inverse operations).
  [[nodiscard]] TransformationLog inverse() const;
  /// Every slot index shifted through `map` (slot k -> map[k]).
  [[nodiscard]] TransformationLog remapped(const std::vector<std::size_t>& map) const;

  void replay(std::vector<RingElement>& slots) const;
  void replay(std::vector<RingVector>& slots) const;
  void replay_inverse(std::vector<RingElement>& slots) const;
  void replay_inverse(std::vector<RingVector>& slots) const;

  /// One operation per line; `#` starts a comment line.
  [[nodiscard]] std::string to_string() const;
  static TransformationLog parse(std::string_view text, Domain domain, int rank = 0);

 private:
  std::vector<LogOp> ops_;
};

/// Applies one operation to a slot list.
void apply(const LogOp& op, std::vector<RingElement>& slots);
void apply(const LogOp& op, std::vector<RingVector>& slots);

}  // namespace geuclid
