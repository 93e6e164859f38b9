#include "cyclecap/asym.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace cyclecap {

namespace {

// g(v) - 1 with g(v) = v e^v / (e^v - 1) = v / (1 - e^{-v}); the direct
// expression cancels badly near 0, so a short Bernoulli series takes over.
double g_minus_one(double v) {
    if (v == 0.0) return 0.0;
    if (std::abs(v) < 0.5) {
        const double v2 = v * v;
        return v / 2.0 + v2 / 12.0 - v2 * v2 / 720.0 + v2 * v2 * v2 / 30240.0 -
               v2 * v2 * v2 * v2 / 1209600.0;
    }
    return v / (-std::expm1(-v)) - 1.0;
}

// (1 - e^{-t})/t, continued by 1 at t = 0.
double one_minus_exp_ratio(double t) {
    if (t == 0.0) return 1.0;
    return -std::expm1(-t) / t;
}

struct Simpson {
    std::function<double(double)> f;
    int max_depth = 48;

    double whole(double a, double fa, double fm, double fb, double b) const {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double recurse(double a, double b, double fa, double fm, double fb, double s,
                   double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = whole(a, fa, flm, fm, m);
        const double right = whole(m, fm, frm, fb, b);
        const double delta = left + right - s;
        if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
            return left + right + delta / 15.0;
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }

    double integrate(double a, double b, double tol) const {
        if (a == b) return 0.0;
        const double m = 0.5 * (a + b);
        const double fa = f(a), fm = f(m), fb = f(b);
        return recurse(a, b, fa, fm, fb, whole(a, fa, fm, fb, b), tol, max_depth);
    }
};

} // namespace

XiValue solve_xi(double u) {
    if (!(u >= 1.0)) throw DomainError("solve_xi: u must be >= 1");
    if (u == 1.0) return XiValue{1.0, 0.0};

    // f(xi) = xi - log(1 + u xi) is increasing on the bracket (log u, 2 log u]
    // and brackets the non-zero root.
    const double log_u = std::log(u);
    double lo = log_u, hi = 2.0 * log_u;
    auto f = [&](double xi) { return xi - std::log1p(u * xi); };

    double xi = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = f(xi);
        if (fx < 0.0)
            lo = xi;
        else
            hi = xi;
        const double fp = 1.0 - u / (1.0 + u * xi);
        double next = xi - fx / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - xi);
        xi = next;
        if (step <= 2.0 * std::numeric_limits<double>::epsilon() * xi) break;
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * xi) break;
    }
    return XiValue{u, xi};
}

double xi_two_term(double u) {
    if (!(u > 1.0)) throw DomainError("xi_two_term: u must be > 1");
    return std::log(u) + std::log(std::log(u + 2.0));
}

double eval_I(double z) {
    if (!(z >= 0.0)) throw DomainError("eval_I: z must be >= 0");
    if (z > 700.0)
        throw OverflowError("eval_I: z > 700 exceeds double range; use a log-scale expansion");
    if (z == 0.0) return 0.0;

    // sum_{k>=1} z^k / (k k!), term ratio t_k/t_{k-1} = z (k-1) / k^2.
    double sum = 0.0, comp = 0.0;
    double term = z;
    for (std::int64_t k = 1; k < 100000; ++k) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        const double kd = static_cast<double>(k);
        term *= z * kd / ((kd + 1.0) * (kd + 1.0));
        if (term < 1e-16 * std::abs(sum)) break;
    }
    return sum;
}

double eval_T_scaled(double K, double z) {
    if (!(K > 0.0)) throw DomainError("eval_T: K must be positive");
    if (!(z >= 0.0) || z > M_PI * K * (1.0 + 1e-12))
        throw DomainError("eval_T: requires 0 <= z <= pi*K");
    if (z == 0.0) return 0.0;

    // e^{-z} T_K(z) = int_0^z e^{t-z} (1 - e^{-t})/t (g(t/K) - 1) dt.
    // The factor e^{t-z} makes everything below t = z - 80 smaller than
    // e^{-80}, far below the tolerance, so that range is dropped.
    Simpson quad{[K, z](double t) {
        return std::exp(t - z) * one_minus_exp_ratio(t) * g_minus_one(t / K);
    }};
    const double a = std::max(0.0, z - 80.0);
    return quad.integrate(a, z, 1e-10 / K);
}

double eval_T(double K, double z) {
    const double scaled = eval_T_scaled(K, z);
    if (z > 700.0)
        throw OverflowError("eval_T: e^z exceeds double range; use eval_T_scaled");
    return scaled * std::exp(z);
}

namespace {

ExpansionResult expand_series(const Constraint& c, std::optional<std::int64_t> max_order,
                              std::int64_t k_start, bool minus_one) {
    const double u = c.ratio();
    if (!(u > std::exp(1.0)))
        throw DomainError("expansion requires n/alpha > e, got " + std::to_string(u));
    if (max_order && *max_order < 0) throw DomainError("max_order must be >= 0");

    const double xi = solve_xi(u).xi;
    const double pref = u;

    ExpansionResult res;
    res.truncation_reason =
        max_order ? TruncationReason::requested_order : TruncationReason::optimal_stop;

    double factorial = 1.0; // k!
    double xi_pow = 1.0;    // xi^k
    double prev_mag = std::numeric_limits<double>::infinity();
    double sum = 0.0, comp = 0.0;
    std::int64_t last = -1;

    for (std::int64_t k = 0;; ++k) {
        if (k > 0) {
            factorial *= static_cast<double>(k);
            xi_pow *= xi;
        }
        if (max_order && k > *max_order) break;
        const double coef = minus_one ? factorial - 1.0 : factorial;
        const double term = pref * coef / xi_pow;
        if (!std::isfinite(term))
            throw DomainError("expansion term overflows double at order " + std::to_string(k));
        if (!max_order && k > k_start) {
            if (std::abs(term) >= prev_mag) break; // optimal truncation
        }
        res.terms.push_back(term);
        last = k;
        if (k >= k_start) prev_mag = std::abs(term);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    res.value = sum;
    res.truncation_index = last;
    return res;
}

} // namespace

ExpansionResult expand_m(const Constraint& c, std::optional<std::int64_t> max_order) {
    return expand_series(c, max_order, 0, false);
}

ExpansionResult expand_v(const Constraint& c, std::optional<std::int64_t> max_order) {
    return expand_series(c, max_order, 2, true);
}

double ei_asymptotic(double x, std::int64_t order) {
    if (!(x > 1.0)) throw DomainError("ei_asymptotic: x must be > 1");
    if (order < 0) throw DomainError("ei_asymptotic: order must be >= 0");
    double sum = 0.0, term = 1.0;
    for (std::int64_t k = 0; k <= order; ++k) {
        if (k > 0) term *= static_cast<double>(k) / x;
        sum += term;
    }
    return std::exp(x) / x * sum;
}

} // namespace cyclecap
