#pragma once

#include <stdexcept>
#include <string>

namespace anyplan {

/// Violated precondition or API contract (caller bug).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed or invalid scenario input (parse or validation failure).
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw ContractViolation(message);
}

}  // namespace anyplan
