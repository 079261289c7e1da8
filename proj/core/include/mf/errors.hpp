#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace mf {

/// Violated precondition: bad grid, bad parameter, mismatched operands.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation ran but its result fails a numerical check
/// (boundary mass, residual, convergence, stability).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field mass on the grid frame exceeds what the operation tolerates.
class BoundaryMassError : public NumericalError {
public:
    BoundaryMassError(const std::string& what, double mass);
    double mass() const noexcept { return mass_; }

private:
    double mass_;
};

using WarningHandler = std::function<void(const std::string&)>;

/// Receives soft diagnostics (e.g. frame mass between the decay and error thresholds).
/// The default handler writes to stderr; returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace mf
