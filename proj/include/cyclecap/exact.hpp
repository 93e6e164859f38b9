#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "cyclecap/constraint.hpp"

namespace cyclecap {

/// Exact counts a_0..a_n where a_k is the number of permutations of k
/// elements with all cycles of length <= min(alpha, k).
struct CountTable {
    Constraint constraint;
    std::vector<mpz_class> counts;

    const mpz_class& total() const { return counts.back(); }
};

/// Exact distribution of the total cycle count C under the uniform measure
/// on the constrained permutations. Keys outside [support_min, support_max]
/// are absent.
struct CycleCountDistribution {
    Constraint constraint;
    std::map<std::int64_t, double> probs;
    std::int64_t support_min = 0;
    std::int64_t support_max = 0;
};

struct DistributionMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Builds the full count table by the falling-factorial recurrence
///   a_k = sum_{j=1..min(alpha,k)} (k-1)(k-2)...(k-j+1) * a_{k-j}.
/// Throws ResourceLimitError when n exceeds caps.max_count_n.
CountTable count_constrained(const Constraint& c, const Caps& caps = {});

/// Exact distribution of C by the bivariate recurrence over (elements used,
/// cycles used), evolved in row-normalized floating point; the scale of row k
/// is the exact count a_k. Throws ResourceLimitError above caps.
CycleCountDistribution exact_cycle_count_distribution(const Constraint& c,
                                                      const Caps& caps = {});

DistributionMoments distribution_moments(const CycleCountDistribution& d);

struct OracleResult {
    mpz_class count;
    CycleCountDistribution dist;
};

/// Enumerates all n! permutations and filters by maximum cycle length.
/// Rejects n > 9: the oracle is desk-scale only.
OracleResult brute_force_oracle(const Constraint& c);

/// First-step law of the recursive decomposition: entry j-1 is the
/// probability that the cycle containing a fixed fresh element has length j
/// when k elements remain, j = 1..min(alpha, k). The probabilities are exact
/// integer ratios (k-1)...(k-j+1) * a_{k-j} / a_k assembled in floating
/// point from exact mantissa/exponent splits of the table entries.
std::vector<double> cycle_length_law(const CountTable& table, std::int64_t k);

/// Natural logarithm of a_k, accurate to a few ulp.
double log_count(const CountTable& table, std::int64_t k);

} // namespace cyclecap
