#pragma once

#include <stdexcept>
#include <string>

namespace kripke {

/// Raised when an operation receives structurally invalid input
/// (out-of-range worlds, maps that are not p-morphisms, malformed
/// documents, violated preconditions).  CLI exit code 2.
class InvalidInput : public std::runtime_error {
public:
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a search or enumeration exceeds its configured budget.
/// Deliberately distinct from a negative answer: "no result within
/// budget" is never reported as "no result exists".  CLI exit code 3.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kripke
