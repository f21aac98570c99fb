#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpcodes {

// Exit-code contract for the CLI: ParseError maps to 2, DomainError to 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// A bug in this library, not in the caller's input: a cross-check that must
// hold by construction failed.
struct InternalError : Error {
  using Error::Error;
};

struct NonPrimeModulus : DomainError {
  using DomainError::DomainError;
};

struct DegenerateSpec : DomainError {
  using DomainError::DomainError;
};

struct RingTooLarge : DomainError {
  using DomainError::DomainError;
};

struct ComponentOutOfRange : DomainError {
  using DomainError::DomainError;
};

struct NotAUnit : DomainError {
  unsigned element;
  NotAUnit(unsigned element_, const std::string& what_)
      : DomainError(what_), element(element_) {}
};

struct NotSquare : DomainError {
  using DomainError::DomainError;
};

struct Singular : DomainError {
  using DomainError::DomainError;
};

// Carries a nonzero row vector b with b*A = 0 for the matrix that failed the
// full-row-rank test.
struct NotFrrError : DomainError {
  std::size_t component;
  std::vector<unsigned> witness;
  NotFrrError(std::size_t component_, std::vector<unsigned> witness_,
              const std::string& what_)
      : DomainError(what_), component(component_), witness(std::move(witness_)) {}
};

struct LengthMismatch : DomainError {
  using DomainError::DomainError;
};

struct ShapeMismatch : DomainError {
  using DomainError::DomainError;
};

struct IndexOutOfRange : DomainError {
  using DomainError::DomainError;
};

struct EnumerationCapExceeded : DomainError {
  using DomainError::DomainError;
};

struct SearchSpaceTooLarge : DomainError {
  using DomainError::DomainError;
};

struct ProfileNotSfrr : DomainError {
  using DomainError::DomainError;
};

struct NotNsc : DomainError {
  using DomainError::DomainError;
};

struct NotTwoWaySfrr : DomainError {
  using DomainError::DomainError;
};

struct NotQuasiOrthogonal : DomainError {
  using DomainError::DomainError;
};

struct NotSelfOrthogonalComponent : DomainError {
  std::size_t index;
  NotSelfOrthogonalComponent(std::size_t index_, const std::string& what_)
      : DomainError(what_), index(index_) {}
};

struct NotPartitionedOrthogonal : DomainError {
  using DomainError::DomainError;
};

struct UnknownExample : DomainError {
  using DomainError::DomainError;
};

}  // namespace mpcodes
