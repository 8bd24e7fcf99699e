#pragma once

#include <cstdint>
#include <vector>

#include "mpmab/metrics.hpp"
#include "mpmab/scenario.hpp"

namespace mpmab {

struct RunOptions {
    int jobs = 1;  ///< worker threads; repetitions are independent
};

struct ScenarioResult {
    ScenarioSpec spec;
    PhaseConstants constants;
    std::vector<std::uint64_t> seeds;  ///< repetition seeds, in order
    std::vector<RunSeries> runs;       ///< one per repetition, in order
    AggregateSeries aggregate;
};

/// Runs every repetition (seed base_seed + i) and aggregates. Results do not
/// depend on `jobs`.
ScenarioResult run_scenario(const ScenarioSpec& spec, const RunOptions& options = {});

struct ComparisonRow {
    std::string name;
    Algorithm algorithm = Algorithm::st;
    std::size_t repetitions = 0;
    double mean_final_regret = 0.0;
    double std_final_regret = 0.0;
    double mean_final_collisions = 0.0;
    double std_final_collisions = 0.0;
};

/// Runs all specs on a shared environment: they must agree on K, means, T,
/// reward kind, repetitions and base seed, so that repetition i of every spec
/// sees the same arm reward stream.
std::vector<ScenarioResult> compare(const std::vector<ScenarioSpec>& specs,
                                    const RunOptions& options = {});

std::vector<ComparisonRow> comparison_rows(const std::vector<ScenarioResult>& results);

}  // namespace mpmab
