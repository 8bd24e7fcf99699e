#pragma once

#include <vector>

#include "mpmab/ranking.hpp"
#include "mpmab/rng.hpp"
#include "mpmab/types.hpp"

namespace mpmab {

/// Random hopping until the first collision-free transmission, then
/// sequential hopping (k -> k+1, K -> 1) for the rest of the budget.
///
/// With `sense_before_play` the phase issues SensePlay instead of Play; a round
/// in which the arm was sensed busy is lost (no sample, no state change other
/// than the round count).
class LearningPhase {
public:
    LearningPhase(int arms, Round budget, bool sense_before_play = false);

    bool done() const { return elapsed_ >= budget_; }
    Round budget() const { return budget_; }
    Round rounds_elapsed() const { return elapsed_; }
    int arm_count() const { return arms_; }

    Action next_action(Rng& rng);
    void observe(const RoundOutcome& outcome);

    bool orthogonalized() const { return orthogonalized_; }
    /// Arm of the most recent action (0 before the first round).
    ArmIndex current_arm() const { return current_; }
    /// Whether the most recent round was a collision-free transmission.
    bool last_clean() const { return last_clean_; }
    /// Round index (within the phase) of the first clean transmission, or -1.
    Round orthogonalized_at() const { return orthogonalized_at_; }

    /// S_k: transmissions on arm k (index k-1).
    const std::vector<std::int64_t>& play_counts() const { return plays_; }
    /// V_k: summed rewards on arm k (index k-1).
    const std::vector<double>& reward_sums() const { return rewards_; }

    /// V_k / S_k, with 0 for arms never transmitted on.
    std::vector<double> empirical_means() const;
    RankingEstimate ranking() const { return RankingEstimate(empirical_means()); }

private:
    int arms_;
    Round budget_;
    bool sense_;
    Round elapsed_ = 0;
    bool orthogonalized_ = false;
    Round orthogonalized_at_ = -1;
    ArmIndex current_ = 0;
    bool last_clean_ = false;
    bool awaiting_ = false;
    std::vector<std::int64_t> plays_;
    std::vector<double> rewards_;
};

}  // namespace mpmab
