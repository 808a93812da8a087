#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swerect {

enum class ErrorKind {
  NonPositiveParameter,
  DegenerateCase,
  NotHyperbolic,
  NotElliptic,
  RegimeMismatch,
  SingularConstraintSystem,
  ShapeMismatch,
  ViolatesCondition,
  BcViolation,
  SingularSystem,
  NonConvergence,
  CflViolation,
  NonFinite,
  ParseError,
  MissingKey,
  UnknownKey,
  InvalidValue,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// True for errors caused by the caller's input (bad parameters, bad config).
bool is_input_error(ErrorKind kind) noexcept;

}  // namespace swerect
