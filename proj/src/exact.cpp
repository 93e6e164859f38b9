#include "cyclecap/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cyclecap {

namespace {

// Exact mantissa/exponent split of a positive mpz: value = mant * 2^exp2,
// mant in [0.5, 1) rounded to double.
struct MantExp {
    double mant;
    long exp2;
};

MantExp split(const mpz_class& z) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return {d, e};
}

} // namespace

CountTable count_constrained(const Constraint& c, const Caps& caps) {
    if (c.n() > caps.max_count_n)
        throw ResourceLimitError("count_constrained: n=" + std::to_string(c.n()) +
                                 " exceeds cap " + std::to_string(caps.max_count_n));

    const std::int64_t n = c.n();
    const std::int64_t alpha = c.alpha();

    std::vector<mpz_class> a(static_cast<std::size_t>(n) + 1);
    a[0] = 1;
    mpz_class weight;
    for (std::int64_t k = 1; k <= n; ++k) {
        const std::int64_t jmax = std::min(alpha, k);
        // j = 1 term has weight 1; the weight picks up a factor (k-j+1) per step.
        a[k] = a[k - 1];
        weight = 1;
        for (std::int64_t j = 2; j <= jmax; ++j) {
            weight *= static_cast<unsigned long>(k - j + 1);
            mpz_addmul(a[k].get_mpz_t(), weight.get_mpz_t(), a[k - j].get_mpz_t());
        }
    }
    return CountTable{c, std::move(a)};
}

std::vector<double> cycle_length_law(const CountTable& table, std::int64_t k) {
    const std::int64_t n = table.constraint.n();
    if (k < 1 || k > n) throw DomainError("cycle_length_law: k out of range");
    const std::int64_t jmax = std::min(table.constraint.alpha(), k);

    const MantExp ak = split(table.counts[static_cast<std::size_t>(k)]);
    std::vector<double> law(static_cast<std::size_t>(jmax));
    double wm = 1.0;
    long we = 0;
    for (std::int64_t j = 1; j <= jmax; ++j) {
        if (j >= 2) {
            int e = 0;
            wm = std::frexp(wm * static_cast<double>(k - j + 1), &e);
            we += e;
        }
        const MantExp akj = split(table.counts[static_cast<std::size_t>(k - j)]);
        law[static_cast<std::size_t>(j - 1)] =
            std::ldexp(wm * akj.mant / ak.mant, static_cast<int>(we + akj.exp2 - ak.exp2));
    }
    return law;
}

double log_count(const CountTable& table, std::int64_t k) {
    if (k < 0 || k > table.constraint.n()) throw DomainError("log_count: k out of range");
    const MantExp me = split(table.counts[static_cast<std::size_t>(k)]);
    return std::log(me.mant) + static_cast<double>(me.exp2) * std::log(2.0);
}

CycleCountDistribution exact_cycle_count_distribution(const Constraint& c, const Caps& caps) {
    if (c.n() > caps.max_distribution_n)
        throw ResourceLimitError("exact_cycle_count_distribution: n=" + std::to_string(c.n()) +
                                 " exceeds cap " + std::to_string(caps.max_distribution_n));

    const std::int64_t n = c.n();
    const std::int64_t alpha = c.alpha();
    const CountTable table = count_constrained(c, Caps{std::max(caps.max_count_n, n), caps.max_distribution_n});

    // Row k holds q_{k,m} = P(C = m) for a uniform constrained permutation of
    // k elements; the row scale is the exact count a_k, so every row is a
    // probability vector and the recurrence never leaves [0, 1]. For k <= alpha
    // the model is unconstrained and the two-term cycle-count recurrence
    // applies; beyond that the first-step law over cycle lengths drives it.
    struct Row {
        std::int64_t mlo = 0;
        std::vector<double> q;

        double at(std::int64_t m) const {
            const std::int64_t i = m - mlo;
            if (i < 0 || i >= static_cast<std::int64_t>(q.size())) return 0.0;
            return q[static_cast<std::size_t>(i)];
        }
    };

    const std::size_t win = static_cast<std::size_t>(std::min(alpha, n)) + 1;
    std::vector<Row> ring(win);
    ring[0] = Row{0, {1.0}};

    auto row_at = [&](std::int64_t k) -> const Row& { return ring[static_cast<std::size_t>(k) % win]; };

    for (std::int64_t k = 1; k <= n; ++k) {
        Row nr;
        nr.mlo = std::max<std::int64_t>(1, (k + alpha - 1) / alpha);
        nr.q.assign(static_cast<std::size_t>(k - nr.mlo) + 1, 0.0);

        if (k <= alpha) {
            const Row& p = row_at(k - 1);
            const double inv_k = 1.0 / static_cast<double>(k);
            for (std::int64_t m = nr.mlo; m <= k; ++m) {
                const double t = static_cast<double>(k - 1) * p.at(m) + p.at(m - 1);
                nr.q[static_cast<std::size_t>(m - nr.mlo)] = t * inv_k;
            }
        } else {
            const std::vector<double> law = cycle_length_law(table, k);
            for (std::int64_t j = 1; j <= alpha; ++j) {
                const double rj = law[static_cast<std::size_t>(j - 1)];
                if (rj == 0.0) continue;
                const Row& p = row_at(k - j);
                for (std::size_t i = 0; i < p.q.size(); ++i) {
                    const std::int64_t m = p.mlo + static_cast<std::int64_t>(i) + 1;
                    nr.q[static_cast<std::size_t>(m - nr.mlo)] += rj * p.q[i];
                }
            }
        }
        ring[static_cast<std::size_t>(k) % win] = std::move(nr);
    }

    const Row& last = row_at(n);
    double total = 0.0;
    for (double p : last.q) total += p;

    std::map<std::int64_t, double> probs;
    for (std::size_t i = 0; i < last.q.size(); ++i)
        probs[last.mlo + static_cast<std::int64_t>(i)] = last.q[i] / total;
    return CycleCountDistribution{c, std::move(probs), (n + alpha - 1) / alpha, n};
}

DistributionMoments distribution_moments(const CycleCountDistribution& d) {
    double mean = 0.0;
    for (const auto& [k, p] : d.probs) mean += static_cast<double>(k) * p;
    double var = 0.0;
    for (const auto& [k, p] : d.probs) {
        const double dk = static_cast<double>(k) - mean;
        var += dk * dk * p;
    }
    return DistributionMoments{mean, var};
}

OracleResult brute_force_oracle(const Constraint& c) {
    const std::int64_t n = c.n();
    if (n > 9)
        throw ResourceLimitError("brute_force_oracle: n=" + std::to_string(n) +
                                 " > 9; the oracle is desk-scale only");
    const std::int64_t alpha = c.alpha();

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);

    mpz_class count = 0;
    std::map<std::int64_t, std::int64_t> tally;
    do {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::int64_t cycles = 0;
        std::int64_t max_len = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            std::int64_t len = 0;
            for (int j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                ++len;
            }
            ++cycles;
            max_len = std::max(max_len, len);
        }
        if (max_len <= alpha) {
            ++count;
            ++tally[cycles];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::map<std::int64_t, double> probs;
    const double total = count.get_d();
    for (const auto& [k, t] : tally) probs[k] = static_cast<double>(t) / total;
    CycleCountDistribution d{c, std::move(probs), (n + alpha - 1) / alpha, n};
    return OracleResult{std::move(count), std::move(d)};
}

} // namespace cyclecap
