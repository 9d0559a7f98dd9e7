#pragma once

#include <stdexcept>
#include <string>

namespace geuclid {

enum class ErrorCode {
  Parse = 1,
  DomainMismatch,
  OutOfDomain,
  Resource,
  Precondition,
  HypothesisNotMet,
  Inconclusive,
  StarFailure,
  Internal,
  Usage,
  Unsupported,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Parse, what + " at offset " + std::to_string(offset)), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace geuclid
