#pragma once

#include <stdexcept>
#include <string>

namespace qpa {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent bit files (bad magic, truncated payload, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Sizes that do not fit together: key vs seed length, buffer lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Infeasible or unsupported parameters (n, r, t, s, tile size, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The rounding residual of the FFT convolution crossed the safety gate.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace qpa
