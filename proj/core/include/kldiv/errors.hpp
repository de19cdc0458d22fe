#pragma once

#include <stdexcept>
#include <string>

namespace kldiv {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector/matrix dimensions of two operands do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A matrix handed to an SPD-only routine is not symmetric.
class NotSymmetric : public Error {
 public:
  using Error::Error;
};

// Cholesky factorization hit a pivot that is non-positive or below the
// degeneracy threshold (1e-300); the covariance is singular or indefinite.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// A variance entry is non-positive, non-finite, or degenerate (< 1e-300).
class NonPositiveVariance : public Error {
 public:
  using Error::Error;
};

// An input entry is NaN or infinite where a finite value is required.
class NonFinite : public Error {
 public:
  using Error::Error;
};

// Rows of a batch do not share a common dimension.
class RaggedBatch : public Error {
 public:
  using Error::Error;
};

// A scalar precondition was violated (sample count too small, step size out
// of range, zero dimension, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace kldiv
