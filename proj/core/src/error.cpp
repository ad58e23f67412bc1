#include "profmod/error.hpp"

namespace profmod {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::InvalidModule: return "InvalidModule";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::InvalidMorphism: return "InvalidMorphism";
    case ErrorKind::PointNotInSpace: return "PointNotInSpace";
    case ErrorKind::NotACosheaf: return "NotACosheaf";
    case ErrorKind::TransitionNotSurjective: return "TransitionNotSurjective";
    case ErrorKind::NoFactorization: return "NoFactorization";
    case ErrorKind::NotMiddleLinear: return "NotMiddleLinear";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::ActionNotSimplicial: return "ActionNotSimplicial";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace profmod
