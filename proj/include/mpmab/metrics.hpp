#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mpmab/types.hpp"

namespace mpmab {

class MetricsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-round accounting: oracle = sum of the top-N_t true means,
/// realized = sum of mu over arms with exactly one collision-free transmitter.
struct RoundLedger {
    Round round = 0;
    int n_active = 0;
    double oracle_value = 0.0;
    double realized_value = 0.0;
    int collisions = 0;

    double regret() const { return oracle_value - realized_value; }
};

/// Regret evaluator against fixed true means.
///
/// Both sums run over the arms in the same fixed order (mean descending, index
/// ascending), so a round in which exactly the top-N_t arms are held solo has
/// regret exactly 0.0, not merely a rounding residue.
class RegretMeter {
public:
    explicit RegretMeter(std::vector<double> means, bool relaxed_population = false);

    int arm_count() const { return static_cast<int>(means_.size()); }

    /// Sum of the top-min(N, K) means. N > K throws unless relaxed.
    double oracle_value(int n_active) const;

    RoundLedger evaluate(Round round, std::span<const PlayerAction> actions,
                         std::span<const RoundOutcome> outcomes, int n_active);

private:
    std::vector<double> means_;
    bool relaxed_;
    std::vector<ArmIndex> sorted_;
    std::vector<double> prefix_;  // prefix_[n] = sum of the n largest means
    std::vector<int> solo_;       // scratch, by arm index
};

/// Convenience wrapper around RegretMeter for a single round.
double round_regret(std::span<const PlayerAction> actions, std::span<const RoundOutcome> outcomes,
                    std::span<const double> means, int n_active, bool relaxed_population = false);

/// Number of players with eta = 1.
int round_collisions(std::span<const RoundOutcome> outcomes);

/// Cumulative regret and collision series of one repetition, sampled every
/// `stride` rounds plus the last round. `rounds` holds completed-round counts.
struct RunSeries {
    std::vector<Round> rounds;
    std::vector<double> cumulative_regret;
    std::vector<double> cumulative_collisions;
    std::vector<int> n_active;
    std::vector<Round> event_marks;

    double final_regret = 0.0;
    double final_collisions = 0.0;

    std::size_t size() const { return rounds.size(); }
};

/// Records RunSeries samples from a stream of round ledgers.
class SeriesRecorder {
public:
    SeriesRecorder(Round horizon, Round stride);

    void add(const RoundLedger& ledger);
    void mark_event(Round round) { series_.event_marks.push_back(round); }

    double cumulative_regret() const { return cum_regret_; }
    std::int64_t cumulative_collisions() const { return cum_collisions_; }

    RunSeries finish();

private:
    Round horizon_;
    Round stride_;
    Round completed_ = 0;
    double cum_regret_ = 0.0;
    std::int64_t cum_collisions_ = 0;
    RunSeries series_;
};

/// Pointwise mean and sample standard deviation (n - 1) over repetitions.
struct AggregateSeries {
    std::vector<Round> rounds;
    std::vector<double> mean_cum_regret;
    std::vector<double> std_cum_regret;
    std::vector<double> mean_avg_regret;  ///< mean cumulative regret / t
    std::vector<double> mean_cum_collisions;
    std::vector<double> std_cum_collisions;
    std::vector<double> n_active;  ///< mean over repetitions

    std::size_t repetitions = 0;
    double mean_final_regret = 0.0;
    double std_final_regret = 0.0;
    double mean_final_collisions = 0.0;
    double std_final_collisions = 0.0;

    std::size_t size() const { return rounds.size(); }
};

/// Mean and sample standard deviation; a single value has std 0.
struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};
MeanStd mean_std(std::span<const double> values);

/// Throws MetricsError when `runs` is empty or the runs are sampled at
/// different rounds.
AggregateSeries aggregate(std::span<const RunSeries> runs);

}  // namespace mpmab
