#pragma once

#include <stdexcept>
#include <string>

namespace precoderlab {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

class DegenerateUpdateError : public Error {
 public:
  using Error::Error;
};

class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& msg, int iterations)
      : Error(msg), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

class ZeroOperatorError : public Error {
 public:
  using Error::Error;
};

class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class NotUnitNormError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace precoderlab
