#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cyclecap/asym.hpp"
#include "cyclecap/exact.hpp"
#include "cyclecap/saddle.hpp"
#include "cyclecap/sample.hpp"
#include "cyclecap/serialize.hpp"
#include "cyclecap/stats.hpp"

namespace {

using cyclecap::json;

// --alpha accepts a plain integer or the expression "n^a" with 0 < a < 1,
// evaluated as ceil(n^a).
std::int64_t parse_alpha(const std::string& text, std::int64_t n) {
    if (text.rfind("n^", 0) == 0) {
        double a = 0.0;
        try {
            std::size_t pos = 0;
            a = std::stod(text.substr(2), &pos);
            if (pos != text.size() - 2) throw std::invalid_argument(text);
        } catch (const std::exception&) {
            throw cyclecap::DomainError("--alpha: cannot parse exponent in '" + text + "'");
        }
        if (!(a > 0.0 && a < 1.0))
            throw cyclecap::DomainError("--alpha: exponent must lie in (0, 1)");
        const double p = std::pow(static_cast<double>(n), a);
        const double snapped = std::round(p);
        const double val = std::abs(p - snapped) < 1e-9 * std::max(1.0, snapped)
                               ? snapped
                               : std::ceil(p);
        return static_cast<std::int64_t>(val);
    }
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw cyclecap::DomainError("--alpha: expected an integer or n^a, got '" + text + "'");
    }
}

cyclecap::Caps caps_from_env() {
    cyclecap::Caps caps;
    if (const char* env = std::getenv("CYCLECAP_MAX_N")) {
        try {
            caps.max_count_n = std::stoll(env);
        } catch (const std::exception&) {
            throw cyclecap::DomainError("CYCLECAP_MAX_N: cannot parse '" + std::string(env) + "'");
        }
    }
    return caps;
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw cyclecap::DomainError("cannot open output file '" + out_path + "'");
    out << payload;
}

int fail(const char* kind, const std::exception& e, int code) {
    std::cerr << json{{"error", kind}, {"message", e.what()}}.dump() << "\n";
    return code;
}

struct Options {
    std::int64_t n = 0;
    std::string alpha;
    double w = 1.0;
    std::int64_t replicates = 10000;
    std::uint64_t seed = 0;
    std::optional<std::int64_t> max_order;
    bool exact = false;
    std::string out_path;
    std::string format = "json";
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and asymptotic cycle statistics of random permutations without long cycles"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--n", opt.n, "number of permuted elements")->required();
        cmd->add_option("--alpha", opt.alpha, "maximum cycle length (integer or n^a)")->required();
        cmd->add_option("--out", opt.out_path, "write output to this file instead of stdout");
        if (with_format)
            cmd->add_option("--format", opt.format, "output format")
                ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* cmd_count = app.add_subcommand("count", "exact number of constrained permutations");
    add_common(cmd_count, true);
    auto* cmd_dist = app.add_subcommand("dist", "exact distribution of the total cycle count");
    add_common(cmd_dist, true);
    auto* cmd_saddle = app.add_subcommand("saddle", "saddle point and its derivatives");
    add_common(cmd_saddle, false);
    cmd_saddle->add_option("--w", opt.w, "generating-variable argument");
    auto* cmd_moments = app.add_subcommand("moments", "predicted mean and variance of the cycle count");
    add_common(cmd_moments, false);
    auto* cmd_expand = app.add_subcommand("expand", "asymptotic expansions of the predicted moments");
    add_common(cmd_expand, false);
    std::int64_t max_order_raw = -1;
    cmd_expand->add_option("--max-order", max_order_raw, "truncate at this order instead of the optimal index");
    auto* cmd_sample = app.add_subcommand("sample", "seeded standardized cycle-count draws");
    add_common(cmd_sample, true);
    cmd_sample->add_option("--replicates", opt.replicates, "number of draws");
    cmd_sample->add_option("--seed", opt.seed, "RNG seed");
    auto* cmd_verify = app.add_subcommand("verify-clt", "KS distance of the standardized cycle count to the normal");
    add_common(cmd_verify, false);
    cmd_verify->add_flag("--exact", opt.exact, "use the exact distribution instead of sampling");
    cmd_verify->add_option("--replicates", opt.replicates, "number of draws (sampling mode)");
    cmd_verify->add_option("--seed", opt.seed, "RNG seed (sampling mode)");
    auto* cmd_growth = app.add_subcommand("check-growth", "Gaussian-limit hypothesis report");
    add_common(cmd_growth, false);
    auto* cmd_approx = app.add_subcommand("check-approx", "saddle-point count approximation vs the exact count");
    add_common(cmd_approx, false);

    CLI11_PARSE(app, argc, argv);

    try {
        const cyclecap::Caps caps = caps_from_env();
        const std::int64_t alpha = parse_alpha(opt.alpha, opt.n);
        const cyclecap::Constraint c(opt.n, alpha);
        if (cmd_expand->parsed() && max_order_raw >= 0) opt.max_order = max_order_raw;

        if (cmd_count->parsed()) {
            const cyclecap::CountTable t = cyclecap::count_constrained(c, caps);
            if (opt.format == "csv") {
                emit("n,alpha,count\n" + std::to_string(c.n()) + "," +
                         std::to_string(c.requested_alpha()) + "," + t.total().get_str() + "\n",
                     opt.out_path);
            } else {
                const json out{{"n", c.n()},
                               {"alpha", c.requested_alpha()},
                               {"count", t.total().get_str()}};
                emit(out.dump() + "\n", opt.out_path);
            }
        } else if (cmd_dist->parsed()) {
            const auto d = cyclecap::exact_cycle_count_distribution(c, caps);
            if (opt.format == "csv")
                emit(cyclecap::distribution_csv(d), opt.out_path);
            else
                emit(cyclecap::to_json(d).dump() + "\n", opt.out_path);
        } else if (cmd_saddle->parsed()) {
            emit(cyclecap::to_json(cyclecap::solve_saddle(c, opt.w)).dump() + "\n", opt.out_path);
        } else if (cmd_moments->parsed()) {
            const cyclecap::MomentPair mp = cyclecap::moments(c);
            const json out{{"n", c.n()},
                           {"alpha", c.requested_alpha()},
                           {"m", mp.m},
                           {"v", mp.v}};
            emit(out.dump() + "\n", opt.out_path);
        } else if (cmd_expand->parsed()) {
            const cyclecap::XiValue xi = cyclecap::solve_xi(c.ratio());
            json out{{"n", c.n()},
                     {"alpha", c.requested_alpha()},
                     {"u", xi.u},
                     {"xi", xi.xi},
                     {"m_expansion", cyclecap::to_json(cyclecap::expand_m(c, opt.max_order))},
                     {"v_expansion", cyclecap::to_json(cyclecap::expand_v(c, opt.max_order))}};
            emit(out.dump() + "\n", opt.out_path);
        } else if (cmd_sample->parsed()) {
            const auto run = cyclecap::run_clt_experiment(c, opt.replicates, opt.seed);
            if (opt.format == "csv")
                emit(cyclecap::sample_run_csv(run), opt.out_path);
            else
                emit(cyclecap::sample_run_summary_json(run).dump() + "\n", opt.out_path);
        } else if (cmd_verify->parsed()) {
            const cyclecap::MomentPair mp = cyclecap::moments(c);
            json out{{"n", c.n()}, {"alpha", c.requested_alpha()}};
            if (opt.exact) {
                const auto d = cyclecap::exact_cycle_count_distribution(c, caps);
                const auto ks = cyclecap::ks_exact_vs_normal(d, mp.m, mp.v);
                out["mode"] = "exact";
                out["m"] = mp.m;
                out["v"] = mp.v;
                out["ks_distance"] = ks.distance;
                out["ks_location_of_max"] = ks.location_of_max;
                out["sample_size"] = "exact";
            } else {
                const auto run = cyclecap::run_clt_experiment(c, opt.replicates, opt.seed);
                const auto ks = cyclecap::ks_sample_vs_normal(run.standardized_values);
                out["mode"] = "sample";
                out["m"] = mp.m;
                out["v"] = mp.v;
                out["ks_distance"] = ks.distance;
                out["ks_location_of_max"] = ks.location_of_max;
                out["sample_size"] = run.replicates;
                out["seed"] = run.seed;
            }
            emit(out.dump() + "\n", opt.out_path);
        } else if (cmd_growth->parsed()) {
            emit(cyclecap::to_json(cyclecap::regime_check(c)).dump() + "\n", opt.out_path);
        } else if (cmd_approx->parsed()) {
            const cyclecap::CountTable t = cyclecap::count_constrained(c, caps);
            const double log_exact = cyclecap::log_count(t, c.n());
            const double log_approx = cyclecap::saddle_point_count_approx(c);
            const double abs_err = std::abs(log_approx - log_exact);
            const json out{{"n", c.n()},
                           {"alpha", c.requested_alpha()},
                           {"log_exact", log_exact},
                           {"log_approx", log_approx},
                           {"abs_error", abs_err},
                           {"rel_error", abs_err / std::abs(log_exact)}};
            emit(out.dump() + "\n", opt.out_path);
        }
        return 0;
    } catch (const cyclecap::ResourceLimitError& e) {
        return fail("resource_limit", e, 1);
    } catch (const cyclecap::OutOfRegimeError& e) {
        return fail("out_of_regime", e, 2);
    } catch (const cyclecap::DomainError& e) {
        return fail("domain", e, 2);
    } catch (const cyclecap::DegenerateError& e) {
        return fail("degenerate", e, 2);
    } catch (const cyclecap::OverflowError& e) {
        return fail("overflow", e, 2);
    } catch (const cyclecap::NoConvergenceError& e) {
        return fail("no_convergence", e, 2);
    } catch (const cyclecap::CrossCheckError& e) {
        return fail("cross_check", e, 2);
    } catch (const cyclecap::Error& e) {
        return fail("error", e, 2);
    } catch (const std::exception& e) {
        return fail("internal", e, 3);
    }
}
