#include "cyclecap/sample.hpp"

#include <cmath>
#include <string>

namespace cyclecap {

namespace {

// SplitMix64 avalanche finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// Streaming first-step walker over the exact count table. Ratios
// (k-1)...(k-j+1) * a_{k-j} / a_k are assembled from exact mantissa/exponent
// splits of the table entries, so each probability is correct to a few ulp
// without any big-integer arithmetic per draw.
class CycleWalker {
public:
    explicit CycleWalker(const CountTable& table)
        : alpha_(table.constraint.alpha()),
          mant_(table.counts.size()),
          exp2_(table.counts.size()) {
        for (std::size_t k = 0; k < table.counts.size(); ++k) {
            long e = 0;
            mant_[k] = mpz_get_d_2exp(&e, table.counts[k].get_mpz_t());
            exp2_[k] = e;
        }
    }

    // Length of the cycle containing a fresh element when k elements remain.
    std::int64_t draw_length(std::int64_t k, double unit) const {
        const std::int64_t jmax = std::min(alpha_, k);
        const double mk = mant_[static_cast<std::size_t>(k)];
        const long ek = exp2_[static_cast<std::size_t>(k)];
        double wm = 1.0;
        long we = 0;
        double cum = 0.0;
        for (std::int64_t j = 1; j <= jmax; ++j) {
            if (j >= 2) {
                int e = 0;
                wm = std::frexp(wm * static_cast<double>(k - j + 1), &e);
                we += e;
            }
            const std::size_t idx = static_cast<std::size_t>(k - j);
            cum += std::ldexp(wm * mant_[idx] / mk, static_cast<int>(we + exp2_[idx] - ek));
            if (unit < cum) return j;
        }
        return jmax;
    }

private:
    std::int64_t alpha_;
    std::vector<double> mant_;
    std::vector<long> exp2_;
};

} // namespace

Rng Rng::substream(std::uint64_t seed, std::uint64_t replicate) {
    return Rng(mix64(seed + kGamma) ^ mix64(replicate * kGamma + 0x6A09E667F3BCC909ULL));
}

std::uint64_t Rng::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double Rng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t CycleType::total_cycles() const {
    std::int64_t total = 0;
    for (const auto& [len, count] : counts) total += count;
    return total;
}

CycleType sample_cycle_type(const CountTable& table, Rng& rng) {
    const CycleWalker walker(table);
    CycleType type;
    type.n = table.constraint.n();
    std::int64_t k = type.n;
    while (k > 0) {
        const std::int64_t j = walker.draw_length(k, rng.next_unit());
        ++type.counts[j];
        k -= j;
    }
    return type;
}

std::vector<std::int64_t> sample_permutation(const CountTable& table, Rng& rng) {
    const CycleWalker walker(table);
    const std::int64_t n = table.constraint.n();
    std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    std::vector<std::int64_t> image(static_cast<std::size_t>(n), -1);

    std::size_t used = 0;
    while (used < pool.size()) {
        const std::int64_t k = static_cast<std::int64_t>(pool.size() - used);
        const std::int64_t j = walker.draw_length(k, rng.next_unit());
        // The cycle contains pool[used]; the remaining j-1 members form a
        // uniformly chosen ordered arrangement of the other k-1 elements.
        const std::int64_t leader = pool[used];
        std::int64_t prev = leader;
        for (std::int64_t i = 1; i < j; ++i) {
            const std::int64_t span = k - i;
            std::int64_t pick = static_cast<std::int64_t>(rng.next_unit() * static_cast<double>(span));
            if (pick >= span) pick = span - 1;
            std::swap(pool[used + static_cast<std::size_t>(i)],
                      pool[used + static_cast<std::size_t>(i + pick)]);
            const std::int64_t member = pool[used + static_cast<std::size_t>(i)];
            image[static_cast<std::size_t>(prev)] = member;
            prev = member;
        }
        image[static_cast<std::size_t>(prev)] = leader;
        used += static_cast<std::size_t>(j);
    }
    return image;
}

SampleRun run_clt_experiment(const Constraint& c, std::int64_t replicates,
                             std::uint64_t seed) {
    if (replicates < 1) throw DomainError("run_clt_experiment: replicates must be >= 1");
    const MomentPair mp = moments(c);
    if (!(mp.v > 0.0))
        throw DegenerateError("run_clt_experiment: predicted variance is not positive");

    const CountTable table = count_constrained(c);
    const CycleWalker walker(table);
    const double scale = 1.0 / std::sqrt(mp.v);

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(replicates));
    for (std::int64_t r = 0; r < replicates; ++r) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(r));
        std::int64_t k = c.n();
        std::int64_t cycles = 0;
        while (k > 0) {
            k -= walker.draw_length(k, rng.next_unit());
            ++cycles;
        }
        values.push_back((static_cast<double>(cycles) - mp.m) * scale);
    }
    return SampleRun{c, seed, replicates, mp, std::move(values)};
}

} // namespace cyclecap
