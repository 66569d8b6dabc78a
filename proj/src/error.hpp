#pragma once

#include <stdexcept>
#include <string>

namespace iemcoh {

// Failure categories. The C API maps each onto a distinct status code.
enum class ErrorKind {
  MalformedData,
  SingularPoint,
  Connection,
  PrecisionExhausted,
  InvariantViolation,
  QuotientSolve,
  BoundaryCondition,
  Convergence,
  Coverage,
  Domain,
  OutOfRange,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace iemcoh
