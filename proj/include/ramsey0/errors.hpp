#pragma once

#include <stdexcept>
#include <string>

namespace ramsey0 {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad vertex id, wrong uniformity, parse error).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this kind of input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramsey0
