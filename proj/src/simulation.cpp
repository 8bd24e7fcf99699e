#include "mpmab/simulation.hpp"

#include <stdexcept>

#include "mpmab/rng.hpp"

namespace mpmab {
namespace {

constexpr std::uint64_t kEnvironmentTag = 0x656e7669726f6e00ULL;
constexpr std::uint64_t kPlayerTag = 0x706c617965720000ULL;

std::vector<ArmModel> arm_models(const ScenarioSpec& spec)
{
    std::vector<ArmModel> arms;
    arms.reserve(spec.means.size());
    for (double m : spec.means) {
        arms.push_back({m, spec.reward});
    }
    return arms;
}

}  // namespace

std::uint64_t environment_seed(std::uint64_t repetition_seed)
{
    return derive_seed(repetition_seed, kEnvironmentTag);
}

std::uint64_t player_seed(std::uint64_t repetition_seed, PlayerId id)
{
    return derive_seed(repetition_seed, kPlayerTag, static_cast<std::uint64_t>(to_int(id)));
}

SimulationSetup make_setup(const ScenarioSpec& spec, const PhaseConstants& constants, int rep)
{
    SimulationSetup s;
    s.arms = arm_models(spec);
    s.algorithm = spec.algorithm;
    s.params = policy_params(spec, constants);
    s.initial_players = spec.initial_players;
    s.events = expand_events(spec);
    s.horizon = spec.horizon;
    s.seed = spec.base_seed + static_cast<std::uint64_t>(rep);
    s.sensing = spec.algorithm == Algorithm::dts;
    s.relaxed_population = spec.relaxed_population;
    s.stride = effective_stride(spec);
    return s;
}

Simulation::Simulation(SimulationSetup setup)
    : setup_(std::move(setup)),
      env_(EnvironmentConfig{setup_.arms, environment_seed(setup_.seed), setup_.sensing,
                             setup_.relaxed_population, 0}),
      meter_(env_.means(), setup_.relaxed_population),
      recorder_(setup_.horizon, setup_.stride)
{
    for (std::size_t i = 1; i < setup_.events.size(); ++i) {
        if (setup_.events[i].round < setup_.events[i - 1].round) {
            throw std::invalid_argument("population events must be sorted by round");
        }
    }
    for (int i = 0; i < setup_.initial_players; ++i) {
        env_.enter(PlayerId{i});
        admit(PlayerId{i});
    }
}

void Simulation::admit(PlayerId id)
{
    players_.emplace(id, make_policy(setup_.algorithm, setup_.params, id, env_.round(),
                                     player_seed(setup_.seed, id)));
}

const RoundLedger& Simulation::step()
{
    if (finished()) {
        throw std::logic_error("simulation already reached its horizon");
    }
    const Round t = env_.round();

    due_.clear();
    while (next_event_ < setup_.events.size() && setup_.events[next_event_].round == t) {
        due_.push_back(setup_.events[next_event_++]);
    }
    if (next_event_ < setup_.events.size() && setup_.events[next_event_].round < t) {
        throw std::logic_error("population event scheduled in the past");
    }
    changes_ = env_.apply_population_events(due_);
    for (PlayerId id : changes_.left) {
        auto it = players_.find(id);
        it->second->leave();
        departed_.push_back(std::move(it->second));
        players_.erase(it);
    }
    for (PlayerId id : changes_.entered) {
        admit(id);
    }
    if (!changes_.empty()) {
        recorder_.mark_event(t);
    }

    actions_.clear();
    for (auto& [id, policy] : players_) {
        actions_.push_back({id, policy->act(t)});
    }
    env_.resolve_round(actions_, outcomes_);
    std::size_t i = 0;
    for (auto& [id, policy] : players_) {
        policy->feedback(outcomes_[i++]);
    }

    ledger_ = meter_.evaluate(t, actions_, outcomes_, static_cast<int>(players_.size()));
    recorder_.add(ledger_);
    return ledger_;
}

void Simulation::run(const RoundCallback& on_round)
{
    while (!finished()) {
        const auto& ledger = step();
        if (on_round) {
            on_round(*this, ledger);
        }
    }
}

const Policy* Simulation::policy(PlayerId id) const
{
    auto it = players_.find(id);
    return it == players_.end() ? nullptr : it->second.get();
}

std::vector<const Policy*> Simulation::active_policies() const
{
    std::vector<const Policy*> out;
    out.reserve(players_.size());
    for (const auto& [id, policy] : players_) {
        out.push_back(policy.get());
    }
    return out;
}

RunSeries Simulation::take_series() { return recorder_.finish(); }

}  // namespace mpmab
