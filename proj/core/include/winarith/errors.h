#pragma once

#include <stdexcept>
#include <string>

namespace winarith {

/// A qubit was released while holding 1. Always an uncomputation bug.
class NonZeroRelease : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lookup was addressed outside its table.
class TableOutOfBounds : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A classical table would exceed the configured entry cap.
class TableTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Caller broke an operation's precondition (aliasing, range, parity, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace winarith
