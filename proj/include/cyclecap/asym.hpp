#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclecap/constraint.hpp"

namespace cyclecap {

/// The non-zero root of exp(xi) = 1 + u*xi, with xi(1) = 0. For u > 1 the
/// root satisfies log(u) < xi <= 2*log(u).
struct XiValue {
    double u = 0.0;
    double xi = 0.0;
};

enum class TruncationReason { requested_order, optimal_stop };

/// A truncated (possibly divergent) series with its per-order term ledger.
/// terms[k] is the k-th term; truncation_index is the last k included.
/// With optimal_stop, the first non-decrease in |term| occurs at
/// truncation_index + 1.
struct ExpansionResult {
    double value = 0.0;
    std::vector<double> terms;
    std::int64_t truncation_index = 0;
    TruncationReason truncation_reason = TruncationReason::optimal_stop;
};

/// DomainError for u < 1; returns xi = 0 exactly at u = 1.
XiValue solve_xi(double u);

/// Two-term approximation log(u) + log(log(u + 2)); DomainError for u <= 1.
double xi_two_term(double u);

/// I(z) = int_0^z (e^t - 1)/t dt by its everywhere-convergent series,
/// summed with compensated summation. OverflowError for z > 700.
double eval_I(double z);

/// T_K(z) = int_0^z (e^t - 1)/t * (g(t/K) - 1) dt with g(v) = v e^v/(e^v - 1).
/// DomainError unless 0 <= z <= pi*K; OverflowError for z > 700 (the value
/// scales like e^z; use eval_T_scaled instead).
double eval_T(double K, double z);

/// e^{-z} * T_K(z), finite over the whole domain 0 <= z <= pi*K.
double eval_T_scaled(double K, double z);

/// Series (n/alpha) * sum_{k>=0} k!/xi^k at xi = xi(n/alpha), truncated at
/// max_order when given, else at the optimal index (stop before the first
/// non-decreasing term magnitude). DomainError when n/alpha <= e.
ExpansionResult expand_m(const Constraint& c,
                         std::optional<std::int64_t> max_order = std::nullopt);

/// Series (n/alpha) * sum_{k>=2} (k! - 1)/xi^k; the k = 0, 1 coefficients
/// vanish. Preconditions as expand_m.
ExpansionResult expand_v(const Constraint& c,
                         std::optional<std::int64_t> max_order = std::nullopt);

/// Truncated expansion (e^x/x) * sum_{k=0..order} k!/x^k of the exponential
/// integral for large x.
double ei_asymptotic(double x, std::int64_t order);

} // namespace cyclecap
