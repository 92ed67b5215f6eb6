#pragma once

#include <stdexcept>
#include <string>

namespace hmo {

// Malformed input: inconsistent dimensions, invalid values, unbounded boxes.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured size limit was hit (configuration cap, oracle guard, node limit).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hmo
