#pragma once

#include <stdexcept>
#include <string>

namespace coxsheaf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad words, bad matrices, unknown presets.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The chosen rational realization misbehaved (mixed-sign root, double edge,
/// proportional labels of distinct reflections).
class RealizationError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency assertion failed; indicates a bug or a
/// mathematical statement that does not hold on the computed data.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// New minimal generators appeared at the top of the degree window.
class CapError : public Error {
 public:
  using Error::Error;
};

/// Degreewise data is not the Hilbert function of a graded free module.
class NotFreeError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxsheaf
