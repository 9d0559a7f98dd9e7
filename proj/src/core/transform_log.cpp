#include "transform_log.hpp"

#include <sstream>

#include "error.hpp"
#include "grammar.hpp"

namespace geuclid {

LogOp LogOp::elementary(std::size_t from, std::size_t to, RingElement x) {
  if (from == to) throw Error(ErrorCode::Precondition, "elementary operation needs distinct slots");
  LogOp op;
  op.kind = Kind::Elementary;
  op.i = from;
  op.j = to;
  op.factor = std::move(x);
  return op;
}

LogOp LogOp::diagonal(std::size_t slot, const Scalar& c, const Word& g) {
  if (!c.is_unit()) throw Error(ErrorCode::Precondition, "diagonal operation needs an invertible scalar");
  LogOp op;
  op.kind = Kind::Diagonal;
  op.i = op.j = slot;
  op.factor = RingElement::monomial(c, g);
  return op;
}

LogOp LogOp::permute(std::size_t a, std::size_t b) {
  LogOp op;
  op.kind = Kind::Permute;
  op.i = a;
  op.j = b;
  return op;
}

LogOp LogOp::inverse() const {
  switch (kind) {
    case Kind::Elementary: return elementary(i, j, -factor);
    case Kind::Diagonal: {
      const auto& [w, c] = factor.terms().front();
      return diagonal(i, c.inverse(), w.inverse());
    }
    case Kind::Permute: return *this;
  }
  return *this;
}

std::string LogOp::to_string() const {
  switch (kind) {
    case Kind::Elementary: return "E " + std::to_string(i) + " " + std::to_string(j) + " " + factor.to_string();
    case Kind::Diagonal: {
      const auto& [w, c] = factor.terms().front();
      return "D " + std::to_string(i) + " " + c.to_string() + " " + w.to_string();
    }
    case Kind::Permute: return "P " + std::to_string(i) + " " + std::to_string(j);
  }
  return {};
}

namespace {

void check_slots(const LogOp& op, std::size_t n) {
  if (op.i >= n || op.j >= n) {
    throw Error(ErrorCode::Precondition, "log operation '" + op.to_string() + "' refers to a missing slot (have " +
                                             std::to_string(n) + ")");
  }
}

}  // namespace

void apply(const LogOp& op, std::vector<RingElement>& slots) {
  check_slots(op, slots.size());
  switch (op.kind) {
    case LogOp::Kind::Elementary: slots[op.j] += op.factor * slots[op.i]; break;
    case LogOp::Kind::Diagonal: slots[op.i] = op.factor * slots[op.i]; break;
    case LogOp::Kind::Permute: std::swap(slots[op.i], slots[op.j]); break;
  }
}

void apply(const LogOp& op, std::vector<RingVector>& slots) {
  check_slots(op, slots.size());
  switch (op.kind) {
    case LogOp::Kind::Elementary: slots[op.j] = add(slots[op.j], left_mul(op.factor, slots[op.i])); break;
    case LogOp::Kind::Diagonal: slots[op.i] = left_mul(op.factor, slots[op.i]); break;
    case LogOp::Kind::Permute: std::swap(slots[op.i], slots[op.j]); break;
  }
}

void TransformationLog::append(const TransformationLog& other) {
  ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
}

TransformationLog TransformationLog::inverse() const {
  TransformationLog out;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) out.push(it->inverse());
  return out;
}

TransformationLog TransformationLog::remapped(const std::vector<std::size_t>& map) const {
  TransformationLog out;
  for (LogOp op : ops_) {
    op.i = map.at(op.i);
    op.j = map.at(op.j);
    out.push(std::move(op));
  }
  return out;
}

void TransformationLog::replay(std::vector<RingElement>& slots) const {
  for (const auto& op : ops_) apply(op, slots);
}

void TransformationLog::replay(std::vector<RingVector>& slots) const {
  for (const auto& op : ops_) apply(op, slots);
}

void TransformationLog::replay_inverse(std::vector<RingElement>& slots) const { inverse().replay(slots); }

void TransformationLog::replay_inverse(std::vector<RingVector>& slots) const { inverse().replay(slots); }

std::string TransformationLog::to_string() const {
  std::string s;
  for (const auto& op : ops_) s += op.to_string() + "\n";
  return s;
}

TransformationLog TransformationLog::parse(std::string_view text, Domain domain, int rank) {
  TransformationLog log;
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start < text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    const std::string line(text.substr(line_start, end - line_start));
    ++line_no;
    const std::size_t offset = line_start;
    line_start = end + 1;

    std::istringstream in(line);
    std::string tag;
    if (!(in >> tag) || tag[0] == '#') continue;
    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError(offset, "log line " + std::to_string(line_no) + ": " + why);
    };
    std::size_t i = 0;
    if (!(in >> i)) throw fail("expected a slot index");
    if (tag == "E") {
      std::size_t j = 0;
      if (!(in >> j)) throw fail("expected a second slot index");
      std::string rest;
      std::getline(in, rest);
      try {
        log.push(LogOp::elementary(i, j, parse_element(rest, domain, rank)));
      } catch (const Error& e) {
        throw fail(e.what());
      }
    } else if (tag == "D") {
      std::string scalar;
      std::string word;
      if (!(in >> scalar >> word)) throw fail("expected scalar and word");
      RingElement c;
      Word g;
      try {
        c = parse_element(scalar, domain, rank);
        g = parse_word(word, rank);
      } catch (const Error& e) {
        throw fail(e.what());
      }
      if (c.size() != 1 || !c.terms().front().first.is_identity()) throw fail("diagonal scalar must be a nonzero number");
      if (!c.terms().front().second.is_unit()) throw fail("diagonal scalar must be invertible");
      log.push(LogOp::diagonal(i, c.terms().front().second, g));
    } else if (tag == "P") {
      std::size_t j = 0;
      if (!(in >> j)) throw fail("expected a second slot index");
      log.push(LogOp::permute(i, j));
    } else {
      throw fail("unknown operation '" + tag + "'");
    }
  }
  return log;
}

}  // namespace geuclid
