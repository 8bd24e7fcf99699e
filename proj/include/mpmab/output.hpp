#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpmab/runner.hpp"

namespace mpmab {

enum class OutputFormat { csv, json };
OutputFormat parse_output_format(std::string_view text);

/// Final values and provenance of one scenario run, as written to the summary
/// JSON file.
struct RunSummary {
    ScenarioSpec spec;
    PhaseConstants constants;
    std::vector<std::uint64_t> seeds;
    std::size_t repetitions = 0;
    double mean_final_regret = 0.0;
    double std_final_regret = 0.0;
    double mean_final_collisions = 0.0;
    double std_final_collisions = 0.0;
    std::vector<double> final_regret;
    std::vector<double> final_collisions;

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

RunSummary summarize(const ScenarioResult& result);

nlohmann::json to_json(const ScenarioSpec& spec);
ScenarioSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PhaseConstants& c);
PhaseConstants constants_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunSummary& s);
RunSummary summary_from_json(const nlohmann::json& j);

/// `round,mean_cum_regret,std_cum_regret,mean_avg_regret,mean_cum_collisions,
/// std_cum_collisions,n_active`, one row per sampled round.
void write_series_csv(std::ostream& out, const AggregateSeries& agg);
/// `round,cum_regret,cum_collisions,n_active` for one repetition.
void write_run_csv(std::ostream& out, const RunSeries& run);

struct EmitOptions {
    OutputFormat format = OutputFormat::csv;
    bool raw = false;  ///< also write every repetition's series
};

/// Writes <name>.csv (or <name>.json with the series inline) and
/// <name>.summary.json under `dir`; returns the paths written. Throws before
/// writing anything when the result holds no repetitions.
std::vector<std::filesystem::path> emit_outputs(const ScenarioResult& result,
                                                const std::filesystem::path& dir,
                                                const EmitOptions& options = {});

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

}  // namespace mpmab
