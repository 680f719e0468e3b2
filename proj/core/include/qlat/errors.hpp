#pragma once

#include <stdexcept>
#include <string>

namespace qlat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (bad quantum numbers, wrong
/// manifold, malformed geometry).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to converge or to meet its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The detuning sits on an excited hyperfine resonance.
class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The ground doublet is not isolated from the next band.
class DegeneracyError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A first-order rate expansion went negative inside the kept ladder.
class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The configuration cannot be simulated as posed (e.g. every cooling block
/// resonant at once).
class UnsupportedConfigError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace qlat
