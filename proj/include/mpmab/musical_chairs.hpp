#pragma once

#include <optional>
#include <vector>

#include "mpmab/epoch.hpp"
#include "mpmab/policy.hpp"
#include "mpmab/ranking.hpp"
#include "mpmab/rng.hpp"

namespace mpmab {

/// Inverts the per-round collision probability 1 - (1 - 1/K)^(N-1):
/// N = clamp(round(ln f / ln(1 - 1/K)) + 1, 1, K), where f is the fraction of
/// collision-free learning rounds, floored at 1/T0.
int mc_estimate_players(std::int64_t collisions, Round learning_rounds, int arms);

/// Uniform random learning for T0 rounds, then uniform play over the
/// estimated top-N arms until the first collision-free round, then locked.
class MusicalChairs : public Policy {
public:
    enum class Phase { learning, chairs, locked };

    MusicalChairs(PlayerId id, int arms, Round learning_rounds, PlayerEstimator estimator,
                  std::uint64_t seed);

    std::string_view name() const override { return "mc"; }
    bool locked() const override { return phase_ == Phase::locked; }
    std::optional<ArmIndex> locked_arm() const override;

    Phase phase() const { return phase_; }
    Round rounds_elapsed() const { return elapsed_; }
    std::int64_t learning_collisions() const { return collisions_; }
    /// N-hat; 0 while learning.
    int player_estimate() const { return n_hat_; }
    const std::optional<RankingEstimate>& ranking() const { return ranking_; }
    /// Clean samples per arm (index k-1).
    const std::vector<std::int64_t>& sample_counts() const { return samples_; }

protected:
    Action choose(Round t) override;
    void update(const Action& action, const RoundOutcome& outcome) override;

private:
    int arms_;
    Round budget_;
    PlayerEstimator estimator_;
    Rng rng_;
    Phase phase_ = Phase::learning;
    Round elapsed_ = 0;
    std::int64_t collisions_ = 0;
    std::vector<std::int64_t> samples_;
    std::vector<double> rewards_;
    int n_hat_ = 0;
    std::optional<RankingEstimate> ranking_;
    ArmIndex lock_ = 0;
};

/// Musical chairs restarted at every epoch boundary.
class DynamicMusicalChairs : public EpochPolicy {
public:
    DynamicMusicalChairs(PlayerId id, const PolicyParams& params, Round join_round,
                         std::uint64_t seed);
};

}  // namespace mpmab
