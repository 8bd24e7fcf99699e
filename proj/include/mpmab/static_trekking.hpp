#pragma once

#include <optional>
#include <variant>

#include "mpmab/epoch.hpp"
#include "mpmab/learning.hpp"
#include "mpmab/policy.hpp"
#include "mpmab/ranking.hpp"
#include "mpmab/rng.hpp"
#include "mpmab/trekking.hpp"

namespace mpmab {

/// Learning for T0 rounds, then upward or downward trekking on the learned
/// ranking. A player whose last learning arm ranks first locks on it at once.
class StaticTrekking : public Policy {
public:
    enum class Phase { learning, trekking, locked };

    StaticTrekking(PlayerId id, int arms, Round learning_rounds, TrekVariant variant,
                   std::uint64_t seed);

    std::string_view name() const override { return "st"; }
    bool locked() const override { return phase() == Phase::locked; }
    std::optional<ArmIndex> locked_arm() const override;

    Phase phase() const;
    TrekVariant variant() const { return variant_; }
    const LearningPhase& learning() const { return learning_; }
    /// Ranking learned at the end of the learning phase.
    const std::optional<RankingEstimate>& ranking() const { return ranking_; }
    /// Rank of the last learning arm (0 while still learning).
    int start_rank() const { return start_rank_; }
    /// Collisions experienced after learning.
    int trekking_collisions() const;

protected:
    Action choose(Round t) override;
    void update(const Action& action, const RoundOutcome& outcome) override;

private:
    void finish_learning();

    TrekVariant variant_;
    Rng rng_;
    LearningPhase learning_;
    std::optional<RankingEstimate> ranking_;
    int start_rank_ = 0;
    std::variant<std::monostate, TrekUp, TrekDown> trek_;
};

/// Static trekking restarted at every epoch boundary of the global clock.
class DynamicTrekking : public EpochPolicy {
public:
    DynamicTrekking(PlayerId id, const PolicyParams& params, Round join_round, std::uint64_t seed);
};

}  // namespace mpmab
