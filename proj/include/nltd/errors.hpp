#pragma once

#include <stdexcept>
#include <string>

namespace nltd {

// Base of every error thrown by the library. The CLI maps the concrete
// category to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ModeRangeError : public DimensionError {
 public:
  using DimensionError::DimensionError;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Fourier-domain data lost its conjugate symmetry; always a filter bug.
class SymmetryError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A pixel received no aggregation weight.
class CoverageError : public NumericError {
 public:
  using NumericError::NumericError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nltd
