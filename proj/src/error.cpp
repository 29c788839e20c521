#include "lrc/error.hpp"

namespace lrc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::NoSquareRoot: return "NoSquareRoot";
    case ErrorKind::NotDivisor: return "NotDivisor";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::SOutOfRange: return "SOutOfRange";
    case ErrorKind::DistanceNonpositive: return "DistanceNonpositive";
    case ErrorKind::RankDeficiency: return "RankDeficiency";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::LocalityTooSmall: return "LocalityTooSmall";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotRepairable: return "NotRepairable";
    case ErrorKind::NoGroups: return "NoGroups";
    case ErrorKind::FormatError: return "FormatError";
  }
  return "Unknown";
}

}  // namespace lrc
