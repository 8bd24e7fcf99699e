#include "mpmab/env.hpp"

#include <algorithm>
#include <sstream>

namespace mpmab {

std::string_view to_string(ActionKind kind)
{
    switch (kind) {
    case ActionKind::play: return "play";
    case ActionKind::sense_play: return "sense_play";
    case ActionKind::sense: return "sense";
    case ActionKind::absent: return "absent";
    }
    return "?";
}

std::ostream& operator<<(std::ostream& os, const Action& a)
{
    os << to_string(a.kind);
    if (a.has_arm()) {
        os << '(' << a.arm << ')';
    }
    return os;
}

std::string_view to_string(RewardKind kind)
{
    return kind == RewardKind::bernoulli ? "bernoulli" : "uniform";
}

RewardKind parse_reward_kind(std::string_view text)
{
    if (text == "bernoulli") {
        return RewardKind::bernoulli;
    }
    if (text == "uniform") {
        return RewardKind::uniform;
    }
    throw std::invalid_argument("unknown reward kind: " + std::string(text));
}

double ArmModel::reward_from_uniform(double u) const
{
    if (kind == RewardKind::bernoulli) {
        return u < mean ? 1.0 : 0.0;
    }
    const double half_width = std::min(mean, 1.0 - mean);
    return mean - half_width + 2.0 * half_width * u;
}

Environment::Environment(EnvironmentConfig config)
    : arms_(std::move(config.arms)),
      reward_seed_(derive_seed(config.seed, 0x7265776172640000ULL)),
      population_rng_(derive_seed(config.seed, 0x706f70756c617465ULL)),
      sensing_(config.sensing),
      relaxed_(config.relaxed_population),
      round_(config.start_round)
{
    if (arms_.size() < 2) {
        throw EnvironmentError("environment needs K > 1 arms");
    }
    for (const auto& arm : arms_) {
        if (!(arm.mean >= 0.0 && arm.mean <= 1.0)) {
            throw EnvironmentError("arm mean outside [0,1]");
        }
    }
    if (round_ < 0) {
        throw EnvironmentError("negative start round");
    }
    players_on_arm_.assign(arms_.size() + 1, 0);
    transmitters_on_arm_.assign(arms_.size() + 1, 0);
}

std::vector<double> Environment::means() const
{
    std::vector<double> out;
    out.reserve(arms_.size());
    for (const auto& arm : arms_) {
        out.push_back(arm.mean);
    }
    return out;
}

double Environment::best_mean() const
{
    double best = 0.0;
    for (const auto& arm : arms_) {
        best = std::max(best, arm.mean);
    }
    return best;
}

std::vector<PlayerId> Environment::active_players() const
{
    std::vector<PlayerId> out;
    out.reserve(active_.size());
    for (const auto& [id, joined] : active_) {
        out.push_back(id);
    }
    return out;
}

Round Environment::join_round(PlayerId id) const
{
    auto it = active_.find(id);
    if (it == active_.end()) {
        throw EnvironmentError("player is not active");
    }
    return it->second;
}

void Environment::enter(PlayerId id)
{
    if (active_.contains(id)) {
        std::ostringstream msg;
        msg << "player " << id << " is already active";
        throw EnvironmentError(msg.str());
    }
    if (departed_.contains(id)) {
        std::ostringstream msg;
        msg << "player " << id << " has left and cannot re-enter";
        throw EnvironmentError(msg.str());
    }
    if (!relaxed_ && active_.size() >= arms_.size()) {
        throw EnvironmentError("entering player would exceed K active players");
    }
    active_.emplace(id, round_);
    ++entered_total_;
}

void Environment::leave(PlayerId id)
{
    auto it = active_.find(id);
    if (it == active_.end()) {
        std::ostringstream msg;
        msg << "player " << id << " is not active";
        throw EnvironmentError(msg.str());
    }
    active_.erase(it);
    departed_.emplace(id, true);
    ++left_total_;
}

PopulationChanges Environment::apply_population_events(std::span<const PopulationEvent> events)
{
    PopulationChanges changes;
    for (const auto& ev : events) {
        if (ev.round != round_) {
            throw EnvironmentError("population event round does not match current round");
        }
        if (ev.kind == EventKind::enter) {
            if (!ev.target) {
                throw EnvironmentError("enter event needs a specific player id");
            }
            enter(*ev.target);
            changes.entered.push_back(*ev.target);
        } else {
            PlayerId who{};
            if (ev.target) {
                who = *ev.target;
            } else {
                if (active_.empty()) {
                    throw EnvironmentError("random leave with no active players");
                }
                const auto pick = population_rng_.uniform_index(active_.size());
                who = std::next(active_.begin(), static_cast<std::ptrdiff_t>(pick))->first;
            }
            leave(who);
            changes.left.push_back(who);
        }
    }
    return changes;
}

void Environment::check_arm(ArmIndex arm) const
{
    if (arm < 1 || arm > arm_count()) {
        throw EnvironmentError("arm index " + std::to_string(arm) + " outside [1, K]");
    }
}

double Environment::sample_reward(ArmIndex arm, Round t) const
{
    const auto bits = mix64(reward_seed_ ^ mix64(static_cast<std::uint64_t>(t) * 0x100000001B3ULL +
                                                 static_cast<std::uint64_t>(arm)));
    return arms_[static_cast<std::size_t>(arm - 1)].reward_from_uniform(to_unit(bits));
}

std::vector<RoundOutcome> Environment::resolve_round(std::span<const PlayerAction> actions)
{
    std::vector<RoundOutcome> outcomes;
    resolve_round(actions, outcomes);
    return outcomes;
}

void Environment::resolve_round(std::span<const PlayerAction> actions,
                                std::vector<RoundOutcome>& outcomes)
{
    // validate before touching any state
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto& pa = actions[i];
        if (!active_.contains(pa.player)) {
            std::ostringstream msg;
            msg << "inactive player " << pa.player << " acted";
            throw EnvironmentError(msg.str());
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (actions[j].player == pa.player) {
                throw EnvironmentError("player acted twice in one round");
            }
        }
        if (pa.action.has_arm()) {
            check_arm(pa.action.arm);
        }
        if (pa.action.uses_sensing() && !sensing_) {
            throw EnvironmentError("sensing is not enabled in this environment");
        }
    }

    std::fill(players_on_arm_.begin(), players_on_arm_.end(), 0);
    std::fill(transmitters_on_arm_.begin(), transmitters_on_arm_.end(), 0);

    // sensing observes transmissions by players that play without listening
    for (const auto& pa : actions) {
        if (pa.action.kind == ActionKind::play) {
            ++players_on_arm_[static_cast<std::size_t>(pa.action.arm)];
        }
    }

    outcomes.assign(actions.size(), RoundOutcome{});
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const auto& a = actions[i].action;
        auto& out = outcomes[i];
        switch (a.kind) {
        case ActionKind::absent:
            break;
        case ActionKind::play:
            out.arm = a.arm;
            out.transmitted = true;
            break;
        case ActionKind::sense_play:
            out.arm = a.arm;
            out.sensed_busy = players_on_arm_[static_cast<std::size_t>(a.arm)] > 0;
            out.transmitted = !out.sensed_busy;
            break;
        case ActionKind::sense:
            out.arm = a.arm;
            out.sensed_busy = players_on_arm_[static_cast<std::size_t>(a.arm)] > 0;
            break;
        }
        if (out.transmitted) {
            ++transmitters_on_arm_[static_cast<std::size_t>(a.arm)];
        }
    }

    for (std::size_t i = 0; i < actions.size(); ++i) {
        auto& out = outcomes[i];
        if (!out.transmitted) {
            continue;
        }
        const ArmIndex arm = *out.arm;
        if (transmitters_on_arm_[static_cast<std::size_t>(arm)] >= 2) {
            out.collided = true;
            out.reward = 0.0;
        } else {
            out.reward = sample_reward(arm, round_);
        }
    }
    ++round_;
}

}  // namespace mpmab
