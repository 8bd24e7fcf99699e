#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "mpmab/env.hpp"
#include "mpmab/metrics.hpp"
#include "mpmab/policy.hpp"
#include "mpmab/scenario.hpp"

namespace mpmab {

/// Everything one repetition needs, independent of the config layer.
struct SimulationSetup {
    std::vector<ArmModel> arms;
    Algorithm algorithm = Algorithm::st;
    PolicyParams params;
    int initial_players = 0;
    std::vector<PopulationEvent> events;  ///< sorted by round
    Round horizon = 0;
    std::uint64_t seed = 0;  ///< repetition seed
    bool sensing = false;
    bool relaxed_population = false;
    Round stride = 1;
};

/// Setup of repetition `rep` of a scenario: seed base_seed + rep, sensing on
/// for dts only.
SimulationSetup make_setup(const ScenarioSpec& spec, const PhaseConstants& constants, int rep);

/// Seed of the arm reward streams for a repetition seed. Depends on nothing
/// else, so every algorithm run with the same repetition seed sees the same
/// rewards.
std::uint64_t environment_seed(std::uint64_t repetition_seed);
std::uint64_t player_seed(std::uint64_t repetition_seed, PlayerId id);

/// One repetition: population events, then every active player acts, the
/// environment resolves the slot, players receive feedback and the round is
/// accounted.
class Simulation {
public:
    explicit Simulation(SimulationSetup setup);

    Round round() const { return env_.round(); }
    Round horizon() const { return setup_.horizon; }
    bool finished() const { return env_.round() >= setup_.horizon; }

    /// Plays one round and returns its ledger.
    const RoundLedger& step();

    using RoundCallback = std::function<void(const Simulation&, const RoundLedger&)>;
    void run(const RoundCallback& on_round = {});

    const std::vector<PlayerAction>& last_actions() const { return actions_; }
    const std::vector<RoundOutcome>& last_outcomes() const { return outcomes_; }
    const PopulationChanges& last_changes() const { return changes_; }

    const Environment& environment() const { return env_; }
    const SimulationSetup& setup() const { return setup_; }

    /// Active player's policy, or nullptr.
    const Policy* policy(PlayerId id) const;
    /// Active players' policies in id order.
    std::vector<const Policy*> active_policies() const;
    /// Policies of players that already left, in order of departure.
    const std::vector<std::unique_ptr<Policy>>& departed_policies() const { return departed_; }

    double cumulative_regret() const { return recorder_.cumulative_regret(); }
    std::int64_t cumulative_collisions() const { return recorder_.cumulative_collisions(); }

    /// Moves the recorded series out; call once, after the last round.
    RunSeries take_series();

private:
    void admit(PlayerId id);

    SimulationSetup setup_;
    Environment env_;
    RegretMeter meter_;
    SeriesRecorder recorder_;
    std::map<PlayerId, std::unique_ptr<Policy>> players_;
    std::vector<std::unique_ptr<Policy>> departed_;
    std::size_t next_event_ = 0;

    std::vector<PlayerAction> actions_;
    std::vector<RoundOutcome> outcomes_;
    std::vector<PopulationEvent> due_;
    PopulationChanges changes_;
    RoundLedger ledger_;
};

}  // namespace mpmab
