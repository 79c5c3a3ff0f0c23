#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace framecomp {

/// Vectors that must agree in length do not.
class LengthMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the mathematical domain of the operation
/// (e.g. x < lambda_1 for h_lambda, non-positive entry fed to 1/x).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IndexOutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A stated precondition does not hold (e.g. k < d where k >= d is required).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The frame-design majorization condition fails; carries the first
/// violated prefix index (1-based).
class InfeasibleDesignError : public std::runtime_error {
public:
    InfeasibleDesignError(const std::string& what, std::size_t violated_prefix)
        : std::runtime_error(what), violated_prefix_(violated_prefix) {}

    std::size_t violated_prefix() const noexcept { return violated_prefix_; }

private:
    std::size_t violated_prefix_;
};

/// The ascending/descending pairing produced a negative mass entry.
/// Indicates an internal ordering bug, not bad user input.
class InternalPairingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A completion handed to the block analyser is not constant-by-blocks
/// over the support of mu.
class NotBlockStructuredError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The iterative eigensolver failed to reach its off-diagonal threshold.
class NoConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace framecomp
