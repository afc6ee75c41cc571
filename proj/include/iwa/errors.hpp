#pragma once

#include <stdexcept>
#include <string>

namespace iwa {

enum class ErrorKind {
  NotAUnit,
  ContextMismatch,
  LevelUnderflow,
  PrecisionExhausted,
  DegreeCapExceeded,
  NotSquarefreeModP,
  GroupNotSplit,
  NotQuadratic,
  NotTorsionAtPrecision,
  UnsupportedShape,
  DescentViolation,
  CapExceeded,
  InvalidArgument,
  ParseError,
};

const char *to_string(ErrorKind k);

class AlgebraError : public std::runtime_error {
public:
  AlgebraError(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string &msg) {
  throw AlgebraError(k, msg);
}

} // namespace iwa
