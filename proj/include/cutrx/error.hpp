#ifndef CUTRX_ERROR_HPP
#define CUTRX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cutrx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Ill-formed calculus or rule instance.
class CalculusError : public Error {
 public:
  using Error::Error;
};

// Operation applied to the wrong kind of proof node.
class ProofError : public Error {
 public:
  using Error::Error;
};

// Substitution into a rule instance violates its context restriction.
class SubstitutionError : public Error {
 public:
  using Error::Error;
};

// Calculus lacks a property an operation requires (class, invertibility, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Renaming needed a subformula of an empty conclusion.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// Internal assertion: a bound that the theory rules out was hit.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// A configured resource bound (distribution leaves, step cap) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace cutrx

#endif  // CUTRX_ERROR_HPP
