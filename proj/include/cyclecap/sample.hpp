#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cyclecap/exact.hpp"
#include "cyclecap/saddle.hpp"

namespace cyclecap {

/// SplitMix64 generator. The seed fully determines the stream; substream r
/// of a seed is an independent stream selected by avalanche-mixing the
/// replicate index into the state. Period 2^64 per stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng substream(std::uint64_t seed, std::uint64_t replicate);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit();

private:
    std::uint64_t state_;
};

/// Cycle type of a permutation: counts[j] cycles of length j,
/// sum_j j*counts[j] = n.
struct CycleType {
    std::int64_t n = 0;
    std::map<std::int64_t, std::int64_t> counts;

    std::int64_t total_cycles() const;
};

struct SampleRun {
    Constraint constraint;
    std::uint64_t seed = 0;
    std::int64_t replicates = 0;
    MomentPair standardizer; // the (m, v) used for (C - m)/sqrt(v)
    std::vector<double> standardized_values;
};

/// Draws a cycle type distributed exactly as under the uniform measure, by
/// the recursive first-step decomposition on the exact count table. One
/// uniform draw selects each cycle length through the cumulative law.
CycleType sample_cycle_type(const CountTable& table, Rng& rng);

/// Draws a uniform constrained permutation, returned as the one-line array
/// of images (0-based).
std::vector<std::int64_t> sample_permutation(const CountTable& table, Rng& rng);

/// Draws `replicates` cycle types (substream r for replicate r), standardizes
/// each total cycle count by the saddle-point (m, v). Propagates
/// OutOfRegimeError; DegenerateError when the predicted variance vanishes.
SampleRun run_clt_experiment(const Constraint& c, std::int64_t replicates,
                             std::uint64_t seed);

} // namespace cyclecap
