#pragma once

#include <stdexcept>
#include <string>

namespace rsrepair {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: out-of-range element, wrong vector length, non-prime p, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A construction or bound was asked for outside the parameter range where it
/// is defined. The message names the violated condition, e.g. "r = n - k >= 2".
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds the configured desk-scale cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A check polynomial of degree >= r was offered as a dual codeword.
class InvalidCheck : public Error {
 public:
  using Error::Error;
};

/// Repair produced a symbol different from the stored one, or a closed form
/// disagreed with its cross-check. Always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsrepair
