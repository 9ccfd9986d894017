#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace samestats {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad vertex index, empty sample,
/// mismatched lengths, unknown property name, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A property is not defined for graphs this small (density needs n >= 2,
/// triangle ratio needs n >= 3).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Canonical labeling and enumeration only support small orders.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input; `offset` is the byte position of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Eigen-solver non-convergence or a covariance that stays singular after
/// regularization.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A requested dataset has not been cached yet.
class MissingDatasetError : public Error {
 public:
  using Error::Error;
};

/// Stored files disagree with their manifest digest, or the schema version is
/// not understood.
class CorruptDatasetError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while writing an artifact.
class StorageError : public Error {
 public:
  using Error::Error;
};

}  // namespace samestats
