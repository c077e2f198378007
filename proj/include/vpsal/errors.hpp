#pragma once

#include <stdexcept>
#include <string>

namespace vpsal {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad size, out-of-range parameter, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Reading or writing a file failed, or the file contents are malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

// Standardizing a map with zero variance.
class ZeroVarianceError : public Error {
 public:
  ZeroVarianceError() : Error("zero-variance map cannot be standardized") {}
};

// The vanishing-point detector found fewer than two usable lines.
class NoDetectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace vpsal
