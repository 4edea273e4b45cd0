#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition (non-prime field, bad group
// table, ambient mismatch, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured size budget was exceeded. `degree` names the first offending
// degree when one applies, -1 otherwise.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, int degree = -1)
      : Error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

// Two independent computations of the same quantity disagreed. Every such
// equivalence is a theorem, so this always indicates a bug.
class CrossValidationError : public Error {
 public:
  using Error::Error;
};

// An internally asserted identity failed (d^2 != 0, coassociativity of a
// derived object, ...).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace koszul
