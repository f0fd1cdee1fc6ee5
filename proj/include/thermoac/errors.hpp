#pragma once

#include <stdexcept>
#include <string>

namespace thermoac {

/// Raised when inputs violate a documented precondition (shapes, signs, schema).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a time step produces a non-finite field entry.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(long step_index, const std::string& what)
        : std::runtime_error(what), step_index_(step_index) {}

    long step_index() const noexcept { return step_index_; }

private:
    long step_index_;
};

}  // namespace thermoac
