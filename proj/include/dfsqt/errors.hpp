// errors.hpp: exception types shared by every dfsqt module

#pragma once

#include <stdexcept>
#include <string>

namespace dfsqt {

/// Operand dimensions outside the supported {2, 4, 8} (or ≤ 8 for general matrices).
class UnsupportedDimension : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition did not hold (non-Hermitian input, negative spectrum, ...).
class ContractViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature could not reach the requested accuracy within its budget.
class NumericAccuracyError : public std::runtime_error {
public:
    NumericAccuracyError(const std::string& what, double estimate, double error_estimate)
        : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// Malformed or out-of-range experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace dfsqt
