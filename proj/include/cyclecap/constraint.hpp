#pragma once

#include <algorithm>
#include <cstdint>

#include "cyclecap/errors.hpp"

namespace cyclecap {

/// Caps on exact computations. These are configuration values; the CLI maps
/// the CYCLECAP_MAX_N environment variable onto max_count_n.
struct Caps {
    std::int64_t max_count_n = 100000;
    std::int64_t max_distribution_n = 5000;
};

/// The pair (n, alpha): permutations of n elements whose cycles all have
/// length <= alpha. A request with alpha > n is normalized to alpha = n;
/// the requested value is kept for reporting.
class Constraint {
public:
    Constraint(std::int64_t n, std::int64_t alpha)
        : n_(n), alpha_(std::min(alpha, n)), requested_alpha_(alpha) {
        if (n < 1) throw DomainError("Constraint: n must be >= 1");
        if (alpha < 1) throw DomainError("Constraint: alpha must be >= 1");
    }

    std::int64_t n() const { return n_; }
    /// Effective cap, always in [1, n].
    std::int64_t alpha() const { return alpha_; }
    std::int64_t requested_alpha() const { return requested_alpha_; }
    /// n / alpha with the effective cap.
    double ratio() const { return static_cast<double>(n_) / static_cast<double>(alpha_); }

private:
    std::int64_t n_;
    std::int64_t alpha_;
    std::int64_t requested_alpha_;
};

} // namespace cyclecap
