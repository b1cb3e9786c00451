#pragma once

#include <stdexcept>
#include <string>

namespace qclust {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Fixed-width integer arithmetic on matrix entries overflowed.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Two torus elements were built over different skew-symmetric matrices.
class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

/// Left division by the zero element.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// No Laurent quotient exists.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// (L, B) violates the compatibility relation; row/col locate the first bad entry.
class NotCompatible : public Error {
 public:
  NotCompatible(const std::string& what, std::size_t row, std::size_t col)
      : Error(what), row_(row), col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// Mutation requested in a frozen or out-of-range direction.
class NotExchangeable : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same quantity disagreed. Always a bug.
class InternalMismatch : public Error {
 public:
  using Error::Error;
};

/// A postcondition on a freshly built seed (quasi-commutation, bar invariance) failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be an integer after halving was odd.
class NonIntegral : public Error {
 public:
  using Error::Error;
};

class SimplyLinkedViolation : public Error {
 public:
  using Error::Error;
};

class CrossCheckMismatch : public Error {
 public:
  using Error::Error;
};

/// Ledger input failed the monoidal seed conditions.
class LedgerInvalid : public Error {
 public:
  using Error::Error;
};

/// Exploration hit a configured node or term limit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed seed/ledger document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qclust
