#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpmab/rng.hpp"
#include "mpmab/types.hpp"

namespace mpmab {

enum class RewardKind { bernoulli, uniform };

std::string_view to_string(RewardKind kind);
RewardKind parse_reward_kind(std::string_view text);

/// Reward distribution of one arm, supported on [0, 1].
struct ArmModel {
    double mean = 0.0;
    RewardKind kind = RewardKind::bernoulli;

    /// Maps a uniform draw u in [0,1) to a reward. Bernoulli: 1{u < mean}.
    /// Uniform: uniform on [mean - w, mean + w] with w = min(mean, 1 - mean).
    double reward_from_uniform(double u) const;
};

/// Raised for contract violations of the environment (inactive player acting,
/// arm out of range, illegal population change).
class EnvironmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EventKind { enter, leave };

/// Entry or exit of a player at the start of a round.
struct PopulationEvent {
    Round round = 0;
    EventKind kind = EventKind::enter;
    /// Target player. Empty for leave means "a uniformly random active player".
    std::optional<PlayerId> target;

    static PopulationEvent enter(Round r, PlayerId id) { return {r, EventKind::enter, id}; }
    static PopulationEvent leave(Round r, PlayerId id) { return {r, EventKind::leave, id}; }
    static PopulationEvent leave_random(Round r) { return {r, EventKind::leave, std::nullopt}; }

    friend bool operator==(const PopulationEvent&, const PopulationEvent&) = default;
};

struct PopulationChanges {
    std::vector<PlayerId> entered;
    std::vector<PlayerId> left;

    bool empty() const { return entered.empty() && left.empty(); }
};

struct EnvironmentConfig {
    std::vector<ArmModel> arms;
    std::uint64_t seed = 0;
    bool sensing = false;             ///< sense / sense_play actions allowed
    bool relaxed_population = false;  ///< allow more active players than arms
    Round start_round = 0;
};

/// Slotted multi-player bandit with a collision channel.
///
/// Reward draws are counter-based: the draw of arm k in round t depends only
/// on (seed, k, t). Two runs with the same seed therefore see identical arm
/// reward streams whatever the players do, which is what makes common random
/// numbers across algorithms possible.
class Environment {
public:
    explicit Environment(EnvironmentConfig config);

    int arm_count() const { return static_cast<int>(arms_.size()); }
    const std::vector<ArmModel>& arms() const { return arms_; }
    std::vector<double> means() const;
    double best_mean() const;

    Round round() const { return round_; }
    bool sensing_enabled() const { return sensing_; }
    bool relaxed_population() const { return relaxed_; }

    bool is_active(PlayerId id) const { return active_.contains(id); }
    std::size_t active_count() const { return active_.size(); }
    /// Active players in ascending id order.
    std::vector<PlayerId> active_players() const;
    Round join_round(PlayerId id) const;

    std::int64_t entered_total() const { return entered_total_; }
    std::int64_t left_total() const { return left_total_; }

    /// Applies the events scheduled for the current round. Every event must
    /// carry `round() == env.round()`.
    PopulationChanges apply_population_events(std::span<const PopulationEvent> events);

    void enter(PlayerId id);
    void leave(PlayerId id);

    /// Resolves one slot and advances the round counter. Outcomes are returned
    /// in the order of `actions`.
    std::vector<RoundOutcome> resolve_round(std::span<const PlayerAction> actions);

    /// Allocation-free variant; `outcomes` is resized to match `actions`.
    void resolve_round(std::span<const PlayerAction> actions, std::vector<RoundOutcome>& outcomes);

    /// The reward arm `arm` pays a solo transmitter in round `t`.
    double sample_reward(ArmIndex arm, Round t) const;

private:
    void check_arm(ArmIndex arm) const;

    std::vector<ArmModel> arms_;
    std::uint64_t reward_seed_;
    Rng population_rng_;
    bool sensing_;
    bool relaxed_;
    Round round_;
    std::map<PlayerId, Round> active_;
    std::map<PlayerId, bool> departed_;
    std::int64_t entered_total_ = 0;
    std::int64_t left_total_ = 0;

    // scratch, per arm (index 0 unused)
    std::vector<int> players_on_arm_;
    std::vector<int> transmitters_on_arm_;
};

}  // namespace mpmab
