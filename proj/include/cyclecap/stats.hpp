#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "cyclecap/exact.hpp"

namespace cyclecap {

/// Kolmogorov-Smirnov report. For exact distributions sample_size is
/// irrelevant and exact is true. location_of_max is the standardized
/// coordinate where the sup is attained.
struct KsReport {
    double distance = 0.0;
    std::int64_t sample_size = 0;
    bool exact = false;
    double location_of_max = 0.0;
};

/// Standard normal CDF via erfc; absolute error well below 1e-12.
double phi(double z);

/// sup_t |P(C <= t) - Phi((t - m)/sqrt(v))| for the exact distribution of C,
/// evaluated from both sides of every atom. DegenerateError when v <= 0.
KsReport ks_exact_vs_normal(const CycleCountDistribution& d, double m, double v);

/// Classical one-sample KS statistic of `values` against the standard
/// normal. DomainError on empty input.
KsReport ks_sample_vs_normal(std::span<const double> values);

struct ChiSquareResult {
    double statistic = 0.0;
    std::int64_t dof = 0;
};

/// Pearson goodness-of-fit statistic. Expected probabilities must sum to 1
/// within 1e-9; bins with expected count below min_expected are merged into
/// the following bin (trailing ones into the preceding bin). DomainError
/// when fewer than two bins survive merging.
ChiSquareResult chi_square_gof(const std::map<std::int64_t, std::int64_t>& observed,
                               const std::map<std::int64_t, double>& expected,
                               std::int64_t total, double min_expected = 5.0);

/// Upper critical value of the chi-square distribution at significance 1e-4
/// for dof in [1, 50], from a fixed table.
double chi_square_critical(std::int64_t dof);

} // namespace cyclecap
