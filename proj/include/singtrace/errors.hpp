#pragma once

#include <stdexcept>
#include <string>

namespace singtrace {

// Precondition violations throw std::domain_error; malformed input throws
// std::invalid_argument; the types below cover the remaining cases.

// The operation is not defined for this model kind.
struct unsupported_kind : std::invalid_argument {
  explicit unsupported_kind(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed to converge or produced a non-finite value.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Model or curve files that cannot be read.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace singtrace
