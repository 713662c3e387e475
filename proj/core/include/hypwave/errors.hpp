#pragma once

#include <stdexcept>
#include <string>

namespace hypwave {

// Input violates an operation's contract (bad exponent range, pole hit, ...).
// The CLI maps this to exit code 2.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numerical procedure failed to converge within its budget.
// The CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hypwave
