#include "cyclecap/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace cyclecap {

double phi(double z) {
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

KsReport ks_exact_vs_normal(const CycleCountDistribution& d, double m, double v) {
    if (!(v > 0.0)) throw DegenerateError("ks_exact_vs_normal: variance must be positive");
    const double s = std::sqrt(v);

    double cdf = 0.0;
    double best = 0.0;
    double loc = 0.0;
    for (const auto& [k, p] : d.probs) {
        const double z = (static_cast<double>(k) - m) / s;
        const double ph = phi(z);
        const double gap_left = std::abs(cdf - ph);
        cdf += p;
        const double gap_right = std::abs(cdf - ph);
        const double gap = std::max(gap_left, gap_right);
        if (gap > best) {
            best = gap;
            loc = z;
        }
    }
    return KsReport{best, 0, true, loc};
}

KsReport ks_sample_vs_normal(std::span<const double> values) {
    if (values.empty()) throw DomainError("ks_sample_vs_normal: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    const double n = static_cast<double>(sorted.size());
    double best = 0.0;
    double loc = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double ph = phi(sorted[i]);
        const double upper = static_cast<double>(i + 1) / n - ph;
        const double lower = ph - static_cast<double>(i) / n;
        const double gap = std::max(upper, lower);
        if (gap > best) {
            best = gap;
            loc = sorted[i];
        }
    }
    return KsReport{best, static_cast<std::int64_t>(sorted.size()), false, loc};
}

ChiSquareResult chi_square_gof(const std::map<std::int64_t, std::int64_t>& observed,
                               const std::map<std::int64_t, double>& expected,
                               std::int64_t total, double min_expected) {
    double psum = 0.0;
    for (const auto& [k, p] : expected) psum += p;
    if (std::abs(psum - 1.0) > 1e-9)
        throw DomainError("chi_square_gof: expected probabilities sum to " +
                          std::to_string(psum));
    for (const auto& [k, o] : observed)
        if (!expected.count(k))
            throw DomainError("chi_square_gof: observed key outside expected support");

    // Merge forward: a bin below the threshold joins the next one; trailing
    // remainder joins the last kept bin.
    std::vector<std::pair<double, double>> bins; // (observed, expected count)
    double obs_acc = 0.0, exp_acc = 0.0;
    for (const auto& [k, p] : expected) {
        auto it = observed.find(k);
        obs_acc += it == observed.end() ? 0.0 : static_cast<double>(it->second);
        exp_acc += static_cast<double>(total) * p;
        if (exp_acc >= min_expected) {
            bins.emplace_back(obs_acc, exp_acc);
            obs_acc = exp_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 || obs_acc > 0.0) {
        if (bins.empty())
            bins.emplace_back(obs_acc, exp_acc);
        else {
            bins.back().first += obs_acc;
            bins.back().second += exp_acc;
        }
    }
    if (bins.size() < 2)
        throw DomainError("chi_square_gof: all bins merged; total too small");

    double stat = 0.0;
    for (const auto& [o, e] : bins) {
        const double diff = o - e;
        stat += diff * diff / e;
    }
    return ChiSquareResult{stat, static_cast<std::int64_t>(bins.size()) - 1};
}

double chi_square_critical(std::int64_t dof) {
    // Upper 1e-4 quantiles of chi^2 for dof = 1..50.
    static constexpr std::array<double, 50> kCritical = {
        15.13670523, 18.42068074, 21.10751347, 23.51274244, 25.74483196,
        27.85634124, 29.87750391, 31.82762800, 33.71994844, 35.56401394,
        37.36698644, 39.13440388, 40.87065501, 42.57928895, 44.26322494,
        45.92489905, 47.56636956, 49.18939447, 50.79548967, 52.38597327,
        53.96200012, 55.52458878, 57.07464314, 58.61296975, 60.14029191,
        61.65726128, 63.16446742, 64.66244583, 66.15168463, 67.63263026,
        69.10569229, 70.57124758, 72.02964379, 73.48120252, 74.92622189,
        76.36497897, 77.79773171, 79.22472082, 80.64617129, 82.06229384,
        83.47328610, 84.87933377, 86.28061161, 87.67728426, 89.06950713,
        90.45742704, 91.84118289, 93.22090628, 94.59672198, 95.96874848};
    if (dof < 1 || dof > 50)
        throw DomainError("chi_square_critical: dof must lie in [1, 50]");
    return kCritical[static_cast<std::size_t>(dof - 1)];
}

} // namespace cyclecap
