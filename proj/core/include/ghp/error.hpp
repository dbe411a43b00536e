#pragma once

#include <stdexcept>
#include <string>

namespace ghp {

// Raised for malformed or out-of-contract caller input. The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an exhaustive computation would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ghp
