#include "cyclecap/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cyclecap {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

json to_json(const CountTable& t) {
    json counts = json::array();
    for (const auto& a : t.counts) counts.push_back(a.get_str());
    return json{{"n", t.constraint.n()},
                {"alpha", t.constraint.requested_alpha()},
                {"counts", std::move(counts)}};
}

json to_json(const CycleCountDistribution& d) {
    json probs = json::object();
    for (const auto& [k, p] : d.probs) probs[std::to_string(k)] = p;
    return json{{"n", d.constraint.n()},
                {"alpha", d.constraint.requested_alpha()},
                {"support_min", d.support_min},
                {"support_max", d.support_max},
                {"probs", std::move(probs)}};
}

json to_json(const SaddleSolution& s) {
    return json{{"n", s.constraint.n()},
                {"alpha", s.constraint.requested_alpha()},
                {"w", s.w},
                {"x", s.x},
                {"x_prime", s.x_prime},
                {"x_double_prime", s.x_double_prime},
                {"residual", s.residual}};
}

json to_json(const MomentPair& mp) {
    return json{{"m", mp.m}, {"v", mp.v}};
}

json to_json(const RegimeReport& r) {
    return json{{"n", r.constraint.n()},
                {"alpha", r.constraint.requested_alpha()},
                {"lhs", r.lhs},
                {"bound", r.bound},
                {"alpha_ok", r.alpha_ok},
                {"growth_ok", r.growth_ok},
                {"satisfied", r.satisfied()}};
}

json to_json(const ExpansionResult& e) {
    return json{{"value", e.value},
                {"truncation_index", e.truncation_index},
                {"truncation_reason", e.truncation_reason == TruncationReason::optimal_stop
                                          ? "optimal_stop"
                                          : "requested_order"},
                {"terms", e.terms}};
}

json to_json(const KsReport& k) {
    json size;
    if (k.exact)
        size = "exact";
    else
        size = k.sample_size;
    return json{{"distance", k.distance},
                {"sample_size", std::move(size)},
                {"location_of_max", k.location_of_max}};
}

json sample_run_summary_json(const SampleRun& run) {
    double mean = 0.0;
    for (double v : run.standardized_values) mean += v;
    mean /= static_cast<double>(run.standardized_values.size());
    double var = 0.0;
    for (double v : run.standardized_values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(run.standardized_values.size());

    const KsReport ks = ks_sample_vs_normal(run.standardized_values);
    return json{{"n", run.constraint.n()},
                {"alpha", run.constraint.requested_alpha()},
                {"seed", run.seed},
                {"replicates", run.replicates},
                {"m", run.standardizer.m},
                {"v", run.standardizer.v},
                {"sample_mean", mean},
                {"sample_stddev", std::sqrt(var)},
                {"ks_distance", ks.distance}};
}

std::string sample_run_csv(const SampleRun& run) {
    std::ostringstream out;
    out << "# n=" << run.constraint.n() << " alpha=" << run.constraint.requested_alpha()
        << " seed=" << run.seed << " replicates=" << run.replicates
        << " m=" << format_double(run.standardizer.m)
        << " v=" << format_double(run.standardizer.v) << "\n";
    out << "standardized\n";
    for (double v : run.standardized_values) out << format_double(v) << "\n";
    return out.str();
}

std::string distribution_csv(const CycleCountDistribution& d) {
    std::ostringstream out;
    out << "cycles,probability\n";
    for (const auto& [k, p] : d.probs) out << k << "," << format_double(p) << "\n";
    return out.str();
}

} // namespace cyclecap
