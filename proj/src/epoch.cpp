#include "mpmab/epoch.hpp"

#include <stdexcept>

#include "mpmab/rng.hpp"

namespace mpmab {

EpochClock::EpochClock(Round epoch_length) : length_(epoch_length)
{
    if (epoch_length < 1) {
        throw std::invalid_argument("epoch policies need a global clock with T_ep >= 1");
    }
}

EpochPolicy::EpochPolicy(PlayerId id, std::string name, Round epoch_length, EntryMode entry,
                         Round join_round, std::uint64_t seed, Factory factory)
    : Policy(id),
      name_(std::move(name)),
      clock_(epoch_length),
      entry_(entry),
      join_round_(join_round),
      seed_(seed),
      factory_(std::move(factory))
{
    if (!factory_) {
        throw std::invalid_argument("epoch policy without an inner factory");
    }
}

void EpochPolicy::restart(Round t)
{
    // seeded by epoch index so that every epoch draws from its own stream
    inner_ = factory_(derive_seed(seed_, static_cast<std::uint64_t>(clock_.epoch_index(t))));
    inner_start_ = t;
}

Action EpochPolicy::choose(Round t)
{
    if (clock_.is_boundary(t)) {
        restart(t);
    } else if (!started_ && entry_ == EntryMode::unrestricted && t == join_round_) {
        restart(t);
    }
    started_ = true;
    if (!inner_) {
        return Action::absent();
    }
    return inner_->act(t);
}

void EpochPolicy::update(const Action& action, const RoundOutcome& outcome)
{
    (void)action;
    if (inner_) {
        inner_->feedback(outcome);
    }
}

}  // namespace mpmab
