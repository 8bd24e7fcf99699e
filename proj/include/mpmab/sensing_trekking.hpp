#pragma once

#include <optional>
#include <vector>

#include "mpmab/learning.hpp"
#include "mpmab/policy.hpp"
#include "mpmab/ranking.hpp"
#include "mpmab/rng.hpp"

namespace mpmab {

/// Epoch-free trekking with sensing.
///
/// Learning uses SensePlay, so a settled player is never disturbed by a
/// learner. Afterwards the player alternates between a lock of T_l rounds and
/// a short excursion: unestimated arms first (in index order), then estimated
/// arms ranked above the reserve. A candidate sensed busy is skipped; a
/// contested candidate is kept for at most K - J_r + 1 collided rounds, where
/// J_r is the reserve's position in the combined list (unestimated arms
/// first), followed by one round back on the reserve. A collision-free play
/// starts a new lock; when the candidates run out the player locks on the
/// reserve. A lock held for T_l rounds on an unestimated arm yields its
/// estimate.
///
/// Until the first completed lock the player has no reserve and searches the
/// whole list with the downward-trekking back-off instead.
class SensingTrekking : public Policy {
public:
    enum class Mode { learning, searching, locked, excursion, returning };

    SensingTrekking(PlayerId id, const PolicyParams& params, std::uint64_t seed);

    std::string_view name() const override { return "dts"; }
    bool locked() const override { return mode_ == Mode::locked; }
    std::optional<ArmIndex> locked_arm() const override;

    Mode mode() const { return mode_; }
    const LearningPhase& learning() const { return learning_; }
    std::optional<ArmIndex> reserve() const { return reserve_; }
    /// Estimated arms in rank order.
    const std::vector<ArmIndex>& estimated_arms() const { return pi1_.ordered_arms(); }
    const std::vector<ArmIndex>& unestimated_arms() const { return pi2_; }
    Round lock_count() const { return lock_count_; }
    int backoff_budget() const { return budget_; }
    /// Lengths of every completed excursion (rounds between the end of a lock
    /// and the start of the next one).
    const std::vector<Round>& excursion_lengths() const { return excursions_; }

protected:
    Action choose(Round t) override;
    void update(const Action& action, const RoundOutcome& outcome) override;

private:
    void finish_learning();
    void begin_search();
    void lock_on(ArmIndex arm, Round extra = 0);
    void expire_lock();
    void next_excursion_candidate();
    void end_excursion_on_reserve();
    int list_position(ArmIndex arm) const;

    int arms_;
    Round lock_rounds_;
    Round threshold_;
    Rng rng_;
    LearningPhase learning_;
    Mode mode_ = Mode::learning;

    std::vector<double> means_;
    RankingEstimate pi1_;
    std::vector<ArmIndex> pi2_;
    std::optional<ArmIndex> reserve_;

    ArmIndex lock_arm_ = 0;
    Round lock_span_ = 0;
    Round lock_count_ = 0;
    double lock_reward_ = 0.0;
    int reserve_collision_streak_ = 0;

    std::vector<ArmIndex> candidates_;
    std::size_t cand_ = 0;
    int streak_ = 0;
    int budget_ = 1;

    Round excursion_len_ = 0;
    std::vector<Round> excursions_;
};

}  // namespace mpmab
