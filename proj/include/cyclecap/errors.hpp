#pragma once

#include <stdexcept>

namespace cyclecap {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The point (n, alpha, w) violates the saddle regime n/(w*alpha) > 1.
struct OutOfRegimeError : Error { using Error::Error; };

/// A configured resource cap was exceeded; the exact computation is infeasible.
struct ResourceLimitError : Error { using Error::Error; };

/// An iterative solver exhausted its iteration budget.
struct NoConvergenceError : Error { using Error::Error; };

/// An argument lies outside the mathematical domain of the operation.
struct DomainError : Error { using Error::Error; };

/// A distribution has no spread where a positive variance is required.
struct DegenerateError : Error { using Error::Error; };

/// Two independent evaluation routes disagree beyond tolerance.
struct CrossCheckError : Error { using Error::Error; };

/// The result exceeds double range; use a log-scale or scaled variant.
struct OverflowError : Error { using Error::Error; };

} // namespace cyclecap
