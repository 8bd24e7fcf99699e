#include "mpmab/static_trekking.hpp"

#include <stdexcept>

namespace mpmab {

StaticTrekking::StaticTrekking(PlayerId id, int arms, Round learning_rounds, TrekVariant variant,
                               std::uint64_t seed)
    : Policy(id), variant_(variant), rng_(seed), learning_(arms, learning_rounds)
{
    if (learning_rounds < 1) {
        throw std::invalid_argument("static trekking needs at least one learning round");
    }
}

StaticTrekking::Phase StaticTrekking::phase() const
{
    if (!ranking_) {
        return Phase::learning;
    }
    if (const auto* up = std::get_if<TrekUp>(&trek_)) {
        return up->locked() ? Phase::locked : Phase::trekking;
    }
    if (const auto* down = std::get_if<TrekDown>(&trek_)) {
        return down->locked() ? Phase::locked : Phase::trekking;
    }
    return Phase::locked;
}

std::optional<ArmIndex> StaticTrekking::locked_arm() const
{
    if (phase() != Phase::locked) {
        return std::nullopt;
    }
    if (const auto* up = std::get_if<TrekUp>(&trek_)) {
        return up->next_arm();
    }
    if (const auto* down = std::get_if<TrekDown>(&trek_)) {
        return down->next_arm();
    }
    return ranking_->arm_at(1);
}

int StaticTrekking::trekking_collisions() const
{
    if (const auto* up = std::get_if<TrekUp>(&trek_)) {
        return up->collisions();
    }
    if (const auto* down = std::get_if<TrekDown>(&trek_)) {
        return down->collisions();
    }
    return 0;
}

Action StaticTrekking::choose(Round t)
{
    (void)t;
    if (!ranking_) {
        return learning_.next_action(rng_);
    }
    if (auto* up = std::get_if<TrekUp>(&trek_)) {
        return Action::play(up->next_arm());
    }
    if (auto* down = std::get_if<TrekDown>(&trek_)) {
        return Action::play(down->next_arm());
    }
    return Action::play(ranking_->arm_at(1));
}

void StaticTrekking::update(const Action& action, const RoundOutcome& outcome)
{
    (void)action;
    if (!ranking_) {
        learning_.observe(outcome);
        if (learning_.done()) {
            finish_learning();
        }
        return;
    }
    if (auto* up = std::get_if<TrekUp>(&trek_)) {
        up->observe(outcome.collided);
    } else if (auto* down = std::get_if<TrekDown>(&trek_)) {
        down->observe(outcome.collided);
    }
}

void StaticTrekking::finish_learning()
{
    ranking_ = learning_.ranking();
    start_rank_ = ranking_->rank_of(learning_.current_arm());
    if (start_rank_ == 1) {
        return;
    }
    if (variant_ == TrekVariant::up) {
        trek_.emplace<TrekUp>(ranking_->ordered_arms(), start_rank_);
    } else {
        trek_.emplace<TrekDown>(ranking_->ordered_arms(), start_rank_);
    }
}

DynamicTrekking::DynamicTrekking(PlayerId id, const PolicyParams& params, Round join_round,
                                 std::uint64_t seed)
    : EpochPolicy(id, "dt", params.epoch_length, params.entry, join_round, seed,
                  [id, arms = params.arms, t0 = params.learning_rounds,
                   variant = params.trek](std::uint64_t s) -> std::unique_ptr<Policy> {
                      return std::make_unique<StaticTrekking>(id, arms, t0, variant, s);
                  })
{
}

}  // namespace mpmab
