#pragma once

#include <stdexcept>
#include <string>

namespace revlat {

/// Invalid argument to an operation (bad kind parameters, M < 2, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// Integer range exceeded in fixed-point arithmetic. Never wrapped.
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

/// A state that cannot be used for the requested operation (e.g. zero norm).
class StateError : public std::runtime_error {
 public:
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace revlat
