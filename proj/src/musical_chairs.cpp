#include "mpmab/musical_chairs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mpmab {

int mc_estimate_players(std::int64_t collisions, Round learning_rounds, int arms)
{
    if (learning_rounds <= 0) {
        throw std::invalid_argument("player estimate needs a positive learning budget");
    }
    if (arms < 2) {
        throw std::invalid_argument("player estimate needs K > 1");
    }
    if (collisions < 0 || collisions > learning_rounds) {
        throw std::invalid_argument("collision count outside [0, T0]");
    }
    const double t0 = static_cast<double>(learning_rounds);
    const double free_fraction =
        std::max((t0 - static_cast<double>(collisions)) / t0, 1.0 / t0);
    const double n = std::round(std::log(free_fraction) / std::log1p(-1.0 / arms)) + 1.0;
    return static_cast<int>(std::clamp(n, 1.0, static_cast<double>(arms)));
}

MusicalChairs::MusicalChairs(PlayerId id, int arms, Round learning_rounds,
                             PlayerEstimator estimator, std::uint64_t seed)
    : Policy(id),
      arms_(arms),
      budget_(learning_rounds),
      estimator_(std::move(estimator)),
      rng_(seed),
      samples_(static_cast<std::size_t>(arms), 0),
      rewards_(static_cast<std::size_t>(arms), 0.0)
{
    if (arms < 2) {
        throw std::invalid_argument("musical chairs needs K > 1 arms");
    }
    if (learning_rounds < 1) {
        throw std::invalid_argument("musical chairs needs a positive learning budget");
    }
    if (!estimator_) {
        estimator_ = mc_estimate_players;
    }
}

std::optional<ArmIndex> MusicalChairs::locked_arm() const
{
    return phase_ == Phase::locked ? std::optional<ArmIndex>(lock_) : std::nullopt;
}

Action MusicalChairs::choose(Round t)
{
    (void)t;
    switch (phase_) {
    case Phase::learning:
        return Action::play(rng_.uniform_int(1, arms_));
    case Phase::chairs:
        return Action::play(ranking_->arm_at(rng_.uniform_int(1, n_hat_)));
    case Phase::locked:
        break;
    }
    return Action::play(lock_);
}

void MusicalChairs::update(const Action& action, const RoundOutcome& outcome)
{
    switch (phase_) {
    case Phase::learning: {
        const auto k = static_cast<std::size_t>(action.arm - 1);
        if (outcome.collided) {
            ++collisions_;
        } else {
            ++samples_[k];
            rewards_[k] += outcome.reward;
        }
        if (++elapsed_ == budget_) {
            std::vector<double> means(static_cast<std::size_t>(arms_), 0.0);
            for (std::size_t i = 0; i < means.size(); ++i) {
                if (samples_[i] > 0) {
                    means[i] = rewards_[i] / static_cast<double>(samples_[i]);
                }
            }
            ranking_.emplace(std::move(means));
            n_hat_ = std::clamp(estimator_(collisions_, budget_, arms_), 1, arms_);
            phase_ = Phase::chairs;
        }
        return;
    }
    case Phase::chairs:
        ++elapsed_;
        if (!outcome.collided) {
            lock_ = action.arm;
            phase_ = Phase::locked;
        }
        return;
    case Phase::locked:
        ++elapsed_;
        return;
    }
}

DynamicMusicalChairs::DynamicMusicalChairs(PlayerId id, const PolicyParams& params,
                                           Round join_round, std::uint64_t seed)
    : EpochPolicy(id, "dmc", params.mc_epoch_length, params.entry, join_round, seed,
                  [id, arms = params.arms, t0 = params.mc_learning_rounds,
                   est = params.estimator](std::uint64_t s) -> std::unique_ptr<Policy> {
                      return std::make_unique<MusicalChairs>(id, arms, t0, est, s);
                  })
{
}

}  // namespace mpmab
