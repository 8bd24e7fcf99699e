#pragma once

#include <functional>
#include <memory>
#include <string>

#include "mpmab/policy.hpp"

namespace mpmab {

/// Shared global clock that restarts epochs at every t with t mod T_ep == 0.
class EpochClock {
public:
    explicit EpochClock(Round epoch_length);

    Round epoch_length() const { return length_; }
    bool is_boundary(Round t) const { return t % length_ == 0; }
    Round epoch_index(Round t) const { return t / length_; }
    Round next_boundary(Round t) const { return (t / length_ + 1) * length_; }

private:
    Round length_;
};

/// Runs a fresh inner policy per epoch. A player entering mid-epoch idles
/// (Absent) until the next boundary in restricted mode; in unrestricted mode
/// it starts an inner policy at once.
class EpochPolicy : public Policy {
public:
    using Factory = std::function<std::unique_ptr<Policy>(std::uint64_t seed)>;

    EpochPolicy(PlayerId id, std::string name, Round epoch_length, EntryMode entry,
                Round join_round, std::uint64_t seed, Factory factory);

    std::string_view name() const override { return name_; }
    bool locked() const override { return inner_ && inner_->locked(); }
    std::optional<ArmIndex> locked_arm() const override
    {
        return inner_ ? inner_->locked_arm() : std::nullopt;
    }

    const EpochClock& clock() const { return clock_; }
    /// Policy of the running epoch, or nullptr while idling.
    const Policy* current() const { return inner_.get(); }
    /// Global round at which the current inner policy started.
    Round inner_start() const { return inner_start_; }

protected:
    Action choose(Round t) override;
    void update(const Action& action, const RoundOutcome& outcome) override;

private:
    void restart(Round t);

    std::string name_;
    EpochClock clock_;
    EntryMode entry_;
    Round join_round_;
    std::uint64_t seed_;
    Factory factory_;
    std::unique_ptr<Policy> inner_;
    Round inner_start_ = -1;
    bool started_ = false;
};

}  // namespace mpmab
