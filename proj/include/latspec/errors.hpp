#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latspec {

// Inputs outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for failures of a numerical procedure on valid inputs.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A quadrature could not reach the requested tolerance within its resource limits.
class NonConvergence : public NumericalError {
public:
    NonConvergence(std::string const& what, double value, double err_estimate)
        : NumericalError(what), value_(value), err_estimate_(err_estimate) {}
    double value() const { return value_; }
    double err_estimate() const { return err_estimate_; }
private:
    double value_;
    double err_estimate_;
};

// The eigenvalue residual function did not change sign on the search bracket.
class BracketFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Fewer sites than needed for an exponential fit of an eigenvector profile.
class InsufficientDecay : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// An iterative eigensolver hit its restart budget; carries the last iterate.
class IterationLimit : public NumericalError {
public:
    IterationLimit(std::string const& what, double value, double residual, std::vector<double> vector = {})
        : NumericalError(what), value_(value), residual_(residual), vector_(std::move(vector)) {}
    double value() const { return value_; }
    double residual() const { return residual_; }
    std::vector<double> const& vector() const { return vector_; }
private:
    double value_;
    double residual_;
    std::vector<double> vector_;
};

} // namespace latspec
