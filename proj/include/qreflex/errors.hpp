#ifndef QREFLEX_ERRORS_HPP
#define QREFLEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qreflex {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (zero inverse, negative tolerance, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes are incompatible.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix lacks the block structure an operation needs (e.g. symplectic symmetry).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A matrix claimed to be a generalized reflection is not one.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Eigenvector data does not split into the eigenspaces the structure requires.
class InfeasibleStructureError : public Error {
 public:
  using Error::Error;
};

/// The consistency conditions of the inverse eigenproblem fail.
class UnsolvableError : public Error {
 public:
  using Error::Error;
};

}  // namespace qreflex

#endif  // QREFLEX_ERRORS_HPP
