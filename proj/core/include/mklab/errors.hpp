#pragma once

#include <stdexcept>
#include <string>

namespace mklab {

/// A requested size exceeds a configured enumeration or iteration cap.
class SizeLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two partitions were expected to be comparable in the NC order and are not.
class PosetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Insertion requested at a point that is not a Kreweras point.
class InsertionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weingarten system requested outside its invertible range (N < k).
class ConditioningError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative numerical routine failed to converge or produced garbage.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cauchy interlacing violated by a computed spectrum pair.
class InterlacingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mklab
