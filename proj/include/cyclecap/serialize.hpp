#pragma once

#include <string>

#include <json.hpp>

#include "cyclecap/asym.hpp"
#include "cyclecap/exact.hpp"
#include "cyclecap/saddle.hpp"
#include "cyclecap/sample.hpp"
#include "cyclecap/stats.hpp"

namespace cyclecap {

// JSON uses insertion order so emitted schemas are stable. Counts are
// decimal strings (arbitrary precision); floating-point fields use shortest
// round-trip formatting and re-parse to the identical double.
using json = nlohmann::ordered_json;

json to_json(const CountTable& t);
json to_json(const CycleCountDistribution& d);
json to_json(const SaddleSolution& s);
json to_json(const MomentPair& mp);
json to_json(const RegimeReport& r);
json to_json(const ExpansionResult& e);
json to_json(const KsReport& k);

/// Summary with sample moments and the KS statistic against the normal.
json sample_run_summary_json(const SampleRun& run);

/// One standardized value per line; the leading comment line carries
/// n, alpha, seed, replicates, m, v, then a column-header row.
std::string sample_run_csv(const SampleRun& run);

/// "cycles,probability" rows.
std::string distribution_csv(const CycleCountDistribution& d);

/// Shortest round-trip decimal formatting of a double.
std::string format_double(double value);

} // namespace cyclecap
