#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace profmod {

enum class ErrorKind {
  DimensionMismatch,
  RingMismatch,
  GroupMismatch,
  UnsupportedRing,
  NotFree,
  NotInvertible,
  NotAPermutation,
  GroupTooLarge,
  NotASubgroup,
  InvalidModule,
  InvalidAction,
  InvalidMorphism,
  PointNotInSpace,
  NotACosheaf,
  TransitionNotSurjective,
  NoFactorization,
  NotMiddleLinear,
  EnumerationTooLarge,
  NotATree,
  ActionNotSimplicial,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception type; `kind()`
// is the machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace profmod
