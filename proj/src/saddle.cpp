#include "cyclecap/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cyclecap {

namespace {

constexpr double kNearOne = 1e-8;

double direct_power_sum(double x, std::int64_t alpha) {
    double s = 0.0, p = 1.0;
    for (std::int64_t j = 1; j <= alpha; ++j) {
        p *= x;
        s += p;
    }
    return s;
}

double direct_weighted_power_sum(double x, std::int64_t alpha) {
    double s = 0.0, p = 1.0;
    for (std::int64_t j = 1; j <= alpha; ++j) {
        p *= x;
        s += static_cast<double>(j) * p;
    }
    return s;
}

// Root of sum_{j<=alpha} x^j = n/w on (1, inf). The AM-GM bracket
// (n/(w a))^{1/a} <= x <= (n/(w a))^{2/(a+1)} always holds, so bisection is
// safe and safeguarded Newton on g(x) = log(sum x^j) - log(n/w) gives the
// quadratic tail.
double solve_x_core(std::int64_t n, std::int64_t alpha, double w) {
    const double target = static_cast<double>(n) / w;
    const double u = target / static_cast<double>(alpha);
    if (!(u > 1.0))
        throw OutOfRegimeError("solve_saddle: n/(w*alpha) = " + std::to_string(u) +
                               " <= 1");
    const double log_u = std::log(u);
    double lo = std::exp(log_u / static_cast<double>(alpha));
    double hi = std::exp(2.0 * log_u / static_cast<double>(alpha + 1));
    if (hi < lo) std::swap(lo, hi);

    const double log_target = std::log(target);
    auto g = [&](double x) { return std::log(power_sum(x, alpha)) - log_target; };

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double gx = g(x);
        if (gx < 0.0)
            lo = x;
        else
            hi = x;

        // g'(x) = S'(x)/S(x) = J1/(x S); S cancels via gx = log(S) - log(target).
        const double s = power_sum(x, alpha);
        const double gp = weighted_power_sum(x, alpha) / (x * s);
        double next = x - gx / gp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);

        const double step = std::abs(next - x);
        x = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * x &&
            std::abs(g(x)) < 1e-12)
            return x;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * x)
            return x;
    }
    if (std::abs(g(x)) < 1e-12) return x;
    throw NoConvergenceError("solve_saddle: no convergence in 200 iterations");
}

double x_prime_closed_form(std::int64_t n, std::int64_t alpha, double w, double x) {
    const double a = static_cast<double>(alpha);
    const double denom = 1.0 - a * (x - 1.0) - w * a * x / static_cast<double>(n);
    return (x - 1.0) * x / (w * denom);
}

// d/dw of the x' closed form, using dx/dw = x'.
double x_double_prime_analytic(std::int64_t n, std::int64_t alpha, double w, double x,
                               double xp) {
    const double a = static_cast<double>(alpha);
    const double nd = static_cast<double>(n);
    const double num = (x - 1.0) * x;
    const double d = 1.0 - a * (x - 1.0) - w * a * x / nd;
    const double num_w = (2.0 * x - 1.0) * xp;
    const double d_w = -a * xp - a * x / nd - w * a * xp / nd;
    const double wd = w * d;
    return (num_w * wd - num * (d + w * d_w)) / (wd * wd);
}

} // namespace

double power_sum(double x, std::int64_t alpha) {
    if (!(x > 0.0)) throw DomainError("power_sum: x must be positive");
    if (std::abs(x - 1.0) < kNearOne) return direct_power_sum(x, alpha);
    return x * std::expm1(static_cast<double>(alpha) * std::log(x)) / (x - 1.0);
}

double weighted_power_sum(double x, std::int64_t alpha) {
    if (!(x > 0.0)) throw DomainError("weighted_power_sum: x must be positive");
    if (std::abs(x - 1.0) < kNearOne) return direct_weighted_power_sum(x, alpha);
    const double a = static_cast<double>(alpha);
    const double e = std::expm1(a * std::log(x)); // x^alpha - 1
    const double d = x - 1.0;
    return x * (a * d * (e + 1.0) - e) / (d * d);
}

double harmonic_power_sum(double x, std::int64_t alpha) {
    if (!(x > 0.0)) throw DomainError("harmonic_power_sum: x must be positive");
    const double lx = std::log(x);
    double sum = 0.0, comp = 0.0;
    double p = 1.0;
    for (std::int64_t j = 1; j <= alpha; ++j) {
        // Incremental power with a periodic resync keeps the rounding error
        // of x^j at a few ulp independently of alpha.
        p = (j % 512 == 1) ? std::exp(static_cast<double>(j) * lx) : p * x;
        const double term = p / static_cast<double>(j);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

SaddleSolution solve_saddle(const Constraint& c, double w) {
    if (!(w > 0.5 && w < 1.5))
        throw DomainError("solve_saddle: w must lie in (0.5, 1.5)");
    const std::int64_t n = c.n();
    const std::int64_t alpha = c.alpha();

    const double x = solve_x_core(n, alpha, w);
    const double target = static_cast<double>(n) / w;
    const double residual = std::abs(power_sum(x, alpha) - target) / target;
    const double xp = x_prime_closed_form(n, alpha, w, x);
    const double xpp_analytic = x_double_prime_analytic(n, alpha, w, x, xp);

    // Central second differences with one Richardson step. The step is kept
    // inside (0.5, 1.5) and inside the regime margin n/alpha > w + h.
    double h = 0.025;
    h = std::min(h, 0.45 * (1.5 - w));
    h = std::min(h, 0.45 * (w - 0.5));
    h = std::min(h, 0.45 * (c.ratio() - w));

    double xpp = xpp_analytic;
    if (h >= 1e-3) {
        auto xat = [&](double ww) { return solve_x_core(n, alpha, ww); };
        const double d1 = (xat(w + h) - 2.0 * x + xat(w - h)) / (h * h);
        const double h2 = 0.5 * h;
        const double d2 = (xat(w + h2) - 2.0 * x + xat(w - h2)) / (h2 * h2);
        const double xpp_fd = (4.0 * d2 - d1) / 3.0;
        const double rel = std::abs(xpp_fd - xpp_analytic) /
                           std::max(std::abs(xpp_analytic), 1e-300);
        if (rel > 1e-6)
            throw CrossCheckError(
                "solve_saddle: finite-difference and analytic x'' disagree by " +
                std::to_string(rel) + " relative");
        xpp = xpp_fd;
    }

    return SaddleSolution{c, w, x, xp, xpp, residual};
}

MomentPair moments(const Constraint& c) {
    const SaddleSolution s = solve_saddle(c, 1.0);
    const double m = harmonic_power_sum(s.x, c.alpha());
    const double v = m + static_cast<double>(c.n()) * s.x_prime / s.x;
    return MomentPair{m, v};
}

HDerivatives h_derivatives(const Constraint& c, double w) {
    const SaddleSolution s = solve_saddle(c, w);
    const std::int64_t n = c.n();
    const std::int64_t alpha = c.alpha();
    const double nd = static_cast<double>(n);

    const double h2 = nd * s.x_prime / (w * s.x);
    const double h1 = harmonic_power_sum(s.x, alpha) - 0.5 * s.x_prime / s.x +
                      0.5 * s.x_double_prime / s.x_prime + 0.5 / w;

    auto h2_at = [&](double ww) {
        const double x = solve_x_core(n, alpha, ww);
        return nd * x_prime_closed_form(n, alpha, ww, x) / (ww * x);
    };
    double h = 1e-4;
    h = std::min(h, 0.4 * (c.ratio() - w));
    const double d1 = (h2_at(w + h) - h2_at(w - h)) / (2.0 * h);
    const double hh = 0.5 * h;
    const double d2 = (h2_at(w + hh) - h2_at(w - hh)) / (2.0 * hh);
    const double h3 = (4.0 * d2 - d1) / 3.0;

    return HDerivatives{h1, h2, h3};
}

double saddle_point_count_approx(const Constraint& c) {
    const SaddleSolution s = solve_saddle(c, 1.0);
    const double nd = static_cast<double>(c.n());
    const double j1 = weighted_power_sum(s.x, c.alpha());
    return std::lgamma(nd + 1.0) + harmonic_power_sum(s.x, c.alpha()) -
           nd * std::log(s.x) - 0.5 * std::log(2.0 * M_PI * j1);
}

RegimeReport regime_check(const Constraint& c) {
    if (c.n() < 3) throw DomainError("regime_check: n must be >= 3");
    const double nd = static_cast<double>(c.n());
    const double ad = static_cast<double>(c.alpha());
    const double log_n = std::log(nd);
    const double ll = std::log(log_n);
    const double lhs = (ad / nd) * log_n * ll * ll;
    const double bound = 1.0 / (12.0 * M_PI * M_PI * std::exp(1.0));
    return RegimeReport{c, lhs, bound, c.alpha() >= 4, lhs < bound};
}

} // namespace cyclecap
