#include "mpmab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mpmab {

RegretMeter::RegretMeter(std::vector<double> means, bool relaxed_population)
    : means_(std::move(means)), relaxed_(relaxed_population)
{
    if (means_.empty()) {
        throw MetricsError("regret meter needs at least one arm");
    }
    sorted_.resize(means_.size());
    std::iota(sorted_.begin(), sorted_.end(), 1);
    std::stable_sort(sorted_.begin(), sorted_.end(), [this](ArmIndex a, ArmIndex b) {
        return means_[static_cast<std::size_t>(a - 1)] > means_[static_cast<std::size_t>(b - 1)];
    });
    prefix_.assign(means_.size() + 1, 0.0);
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
        prefix_[i + 1] = prefix_[i] + means_[static_cast<std::size_t>(sorted_[i] - 1)];
    }
    solo_.assign(means_.size() + 1, 0);
}

double RegretMeter::oracle_value(int n_active) const
{
    if (n_active < 0) {
        throw MetricsError("negative number of active players");
    }
    const int k = arm_count();
    if (n_active > k && !relaxed_) {
        throw MetricsError("more active players than arms outside relaxed-population mode");
    }
    return prefix_[static_cast<std::size_t>(std::min(n_active, k))];
}

RoundLedger RegretMeter::evaluate(Round round, std::span<const PlayerAction> actions,
                                  std::span<const RoundOutcome> outcomes, int n_active)
{
    if (actions.size() != outcomes.size()) {
        throw MetricsError("actions and outcomes differ in length");
    }
    RoundLedger ledger;
    ledger.round = round;
    ledger.n_active = n_active;
    ledger.oracle_value = oracle_value(n_active);

    std::fill(solo_.begin(), solo_.end(), 0);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& out = outcomes[i];
        if (out.collided) {
            ++ledger.collisions;
        }
        if (out.transmitted && !out.collided) {
            const ArmIndex arm = actions[i].action.arm;
            if (arm < 1 || arm > arm_count()) {
                throw MetricsError("arm index outside [1, K]");
            }
            ++solo_[static_cast<std::size_t>(arm)];
        }
    }
    double realized = 0.0;
    for (ArmIndex arm : sorted_) {
        if (solo_[static_cast<std::size_t>(arm)] > 0) {
            realized += means_[static_cast<std::size_t>(arm - 1)];
        }
    }
    ledger.realized_value = realized;
    return ledger;
}

double round_regret(std::span<const PlayerAction> actions, std::span<const RoundOutcome> outcomes,
                    std::span<const double> means, int n_active, bool relaxed_population)
{
    RegretMeter meter(std::vector<double>(means.begin(), means.end()), relaxed_population);
    return meter.evaluate(0, actions, outcomes, n_active).regret();
}

int round_collisions(std::span<const RoundOutcome> outcomes)
{
    return static_cast<int>(
        std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.collided; }));
}

SeriesRecorder::SeriesRecorder(Round horizon, Round stride) : horizon_(horizon), stride_(stride)
{
    if (horizon < 1) {
        throw MetricsError("series horizon must be positive");
    }
    if (stride < 1) {
        throw MetricsError("series stride must be positive");
    }
    const auto points = static_cast<std::size_t>(horizon / stride + 1);
    series_.rounds.reserve(points);
    series_.cumulative_regret.reserve(points);
    series_.cumulative_collisions.reserve(points);
    series_.n_active.reserve(points);
}

void SeriesRecorder::add(const RoundLedger& ledger)
{
    cum_regret_ += ledger.regret();
    cum_collisions_ += ledger.collisions;
    ++completed_;
    if (completed_ % stride_ == 0 || completed_ == horizon_) {
        series_.rounds.push_back(completed_);
        series_.cumulative_regret.push_back(cum_regret_);
        series_.cumulative_collisions.push_back(static_cast<double>(cum_collisions_));
        series_.n_active.push_back(ledger.n_active);
    }
}

RunSeries SeriesRecorder::finish()
{
    series_.final_regret = cum_regret_;
    series_.final_collisions = static_cast<double>(cum_collisions_);
    return std::move(series_);
}

MeanStd mean_std(std::span<const double> values)
{
    MeanStd out;
    if (values.empty()) {
        return out;
    }
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - out.mean) * (v - out.mean);
        }
        out.std = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

AggregateSeries aggregate(std::span<const RunSeries> runs)
{
    if (runs.empty()) {
        throw MetricsError("no repetitions to aggregate");
    }
    const auto& first = runs.front();
    for (const auto& run : runs) {
        if (run.rounds != first.rounds) {
            throw MetricsError("repetitions are sampled at different rounds");
        }
    }

    AggregateSeries agg;
    agg.repetitions = runs.size();
    agg.rounds = first.rounds;
    const std::size_t points = first.size();
    agg.mean_cum_regret.resize(points);
    agg.std_cum_regret.resize(points);
    agg.mean_avg_regret.resize(points);
    agg.mean_cum_collisions.resize(points);
    agg.std_cum_collisions.resize(points);
    agg.n_active.resize(points);

    std::vector<double> column(runs.size());
    for (std::size_t p = 0; p < points; ++p) {
        for (std::size_t r = 0; r < runs.size(); ++r) {
            column[r] = runs[r].cumulative_regret[p];
        }
        const auto regret = mean_std(column);
        for (std::size_t r = 0; r < runs.size(); ++r) {
            column[r] = runs[r].cumulative_collisions[p];
        }
        const auto coll = mean_std(column);
        for (std::size_t r = 0; r < runs.size(); ++r) {
            column[r] = runs[r].n_active[p];
        }
        agg.mean_cum_regret[p] = regret.mean;
        agg.std_cum_regret[p] = regret.std;
        agg.mean_avg_regret[p] = regret.mean / static_cast<double>(agg.rounds[p]);
        agg.mean_cum_collisions[p] = coll.mean;
        agg.std_cum_collisions[p] = coll.std;
        agg.n_active[p] = mean_std(column).mean;
    }

    for (std::size_t r = 0; r < runs.size(); ++r) {
        column[r] = runs[r].final_regret;
    }
    const auto fr = mean_std(column);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        column[r] = runs[r].final_collisions;
    }
    const auto fc = mean_std(column);
    agg.mean_final_regret = fr.mean;
    agg.std_final_regret = fr.std;
    agg.mean_final_collisions = fc.mean;
    agg.std_final_collisions = fc.std;
    return agg;
}

}  // namespace mpmab
