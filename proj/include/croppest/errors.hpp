#pragma once

#include <stdexcept>
#include <string>

namespace croppest {

/// Non-finite or out-of-domain input to a model formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A closed-form expression whose denominator vanishes for the given parameters.
class DegenerateParameterError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller violated a shape/size contract (grid mismatch, length mismatch).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid configuration value or key.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical integration produced a non-finite value.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}

    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace croppest
