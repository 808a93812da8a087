#include "swerect/error.hpp"

namespace swerect {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::DegenerateCase: return "DegenerateCase";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::NotElliptic: return "NotElliptic";
    case ErrorKind::RegimeMismatch: return "RegimeMismatch";
    case ErrorKind::SingularConstraintSystem: return "SingularConstraintSystem";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ViolatesCondition: return "ViolatesCondition";
    case ErrorKind::BcViolation: return "BcViolation";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingKey: return "MissingKey";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveParameter:
    case ErrorKind::DegenerateCase:
    case ErrorKind::RegimeMismatch:
    case ErrorKind::ViolatesCondition:
    case ErrorKind::ParseError:
    case ErrorKind::MissingKey:
    case ErrorKind::UnknownKey:
    case ErrorKind::InvalidValue:
    case ErrorKind::IoError:
    case ErrorKind::ShapeMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace swerect
