// Exception types shared across the simulator

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace excitonsim {

// Malformed or inconsistent input (shape mismatch, violated precondition).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical step failed: eigensolver breakdown, singular system, bad denominator.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what,
                          std::optional<double> omega_p = std::nullopt)
        : std::runtime_error(what), omega_p_(omega_p) {}

    // Probe frequency (meV) of the failing grid point, when there is one.
    std::optional<double> omega_p() const noexcept { return omega_p_; }

private:
    std::optional<double> omega_p_;
};

// Time integration hit its horizon before reaching the residual target.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace excitonsim
