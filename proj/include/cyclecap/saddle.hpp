#pragma once

#include <cstdint>

#include "cyclecap/constraint.hpp"

namespace cyclecap {

/// The root x > 1 of sum_{j=1..alpha} x^j = n/w together with its
/// w-derivatives. x_prime comes from the closed form obtained by implicit
/// differentiation; x_double_prime from Richardson-extrapolated central
/// differences of x(w), cross-validated against the analytic derivative of
/// the closed form (CrossCheckError on disagreement beyond 1e-6 relative).
struct SaddleSolution {
    Constraint constraint;
    double w = 1.0;
    double x = 0.0;
    double x_prime = 0.0;
    double x_double_prime = 0.0;
    /// |sum x^j - n/w| * w/n.
    double residual = 0.0;
};

/// Predicted mean and variance of the total cycle count:
///   m = sum_{j<=alpha} x(1)^j / j,   v = m + n x'(1)/x(1).
struct MomentPair {
    double m = 0.0;
    double v = 0.0;
};

struct HDerivatives {
    double h1 = 0.0;          // full first-derivative expression
    double h2 = 0.0;          // n x'(w) / (w x(w))
    double h3_estimate = 0.0; // finite-difference estimate of the third derivative
};

/// Hypothesis report for the Gaussian limit: alpha >= 4 and
/// (alpha/n) * log(n) * (log log n)^2 < 1/(12 pi^2 e).
struct RegimeReport {
    Constraint constraint;
    double lhs = 0.0;
    double bound = 0.0;
    bool alpha_ok = false;
    bool growth_ok = false;

    bool satisfied() const { return alpha_ok && growth_ok; }
};

/// Requires w in (0.5, 1.5) and n/(w alpha) > 1 (OutOfRegimeError otherwise).
SaddleSolution solve_saddle(const Constraint& c, double w);

MomentPair moments(const Constraint& c);

HDerivatives h_derivatives(const Constraint& c, double w);

/// log of the saddle-point approximation of the number of constrained
/// permutations at w = 1:
///   log n! + sum x^j/j - n log x - log(2 pi sum j x^j)/2.
double saddle_point_count_approx(const Constraint& c);

/// Requires n >= 3 so that log log n is defined.
RegimeReport regime_check(const Constraint& c);

// Geometric-sum helpers, stable for x > 1 via expm1 of alpha*log(x); the
// direct sum is used when |x - 1| < 1e-8.
double power_sum(double x, std::int64_t alpha);          // sum_{j<=alpha} x^j
double weighted_power_sum(double x, std::int64_t alpha); // sum_{j<=alpha} j x^j
double harmonic_power_sum(double x, std::int64_t alpha); // sum_{j<=alpha} x^j/j

} // namespace cyclecap
