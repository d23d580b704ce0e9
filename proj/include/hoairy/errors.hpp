// Exception types shared by every hoairy module.

#ifndef HOAIRY_ERRORS_HPP_
#define HOAIRY_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hoairy {

/// Argument has the wrong length or shape (tau vector, jet, grid).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain where the quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Numerical evaluation produced a non-finite or otherwise unusable value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ln F was requested where F <= 0 inside a finite-difference stencil.
class PoleProximityError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// Supercritical evaluator was asked for a point too close to a singularity.
class NearPoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Symbolic algebra reached a state that signals a bug (e.g. a Lenard
/// recursion step that is not an exact derivative).
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hoairy

#endif  // HOAIRY_ERRORS_HPP_
