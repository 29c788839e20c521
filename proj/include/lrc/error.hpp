#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrc {

enum class ErrorKind {
  NotPrime,
  TooLarge,
  DivideByZero,
  SpecMismatch,
  NoSquareRoot,
  NotDivisor,
  NotAdmissible,
  DomainError,
  ConvergenceFailure,
  InvariantViolation,
  SOutOfRange,
  DistanceNonpositive,
  RankDeficiency,
  NotDivisible,
  LocalityTooSmall,
  LengthMismatch,
  NotRepairable,
  NoGroups,
  FormatError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library error carrying a machine-readable kind; what() holds the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace lrc
