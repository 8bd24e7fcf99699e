#include "mpmab/sensing_trekking.hpp"

#include <algorithm>
#include <stdexcept>

#include "mpmab/phase_math.hpp"

namespace mpmab {

SensingTrekking::SensingTrekking(PlayerId id, const PolicyParams& params, std::uint64_t seed)
    : Policy(id),
      arms_(params.arms),
      lock_rounds_(params.lock_rounds),
      threshold_(std::max<Round>(1, params.estimate_threshold)),
      rng_(seed),
      learning_(params.arms, params.dts_learning_rounds, true),
      means_(static_cast<std::size_t>(params.arms), 0.0)
{
    if (params.dts_learning_rounds < 1) {
        throw std::invalid_argument("sensing trekking needs at least one learning round");
    }
    if (lock_rounds_ < 1) {
        throw std::invalid_argument("sensing trekking needs T_l >= 1");
    }
}

std::optional<ArmIndex> SensingTrekking::locked_arm() const
{
    return mode_ == Mode::locked ? std::optional<ArmIndex>(lock_arm_) : std::nullopt;
}

int SensingTrekking::list_position(ArmIndex arm) const
{
    const int rank = pi1_.rank_of(arm);
    if (rank == 0) {
        return arms_;
    }
    return static_cast<int>(pi2_.size()) + rank;
}

void SensingTrekking::finish_learning()
{
    const auto& counts = learning_.play_counts();
    const auto estimates = learning_.empirical_means();
    std::vector<ArmIndex> estimated;
    for (ArmIndex k = 1; k <= arms_; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        if (counts[i] >= threshold_) {
            means_[i] = estimates[i];
            estimated.push_back(k);
        } else {
            pi2_.push_back(k);
        }
    }
    pi1_ = RankingEstimate(means_, estimated);
    budget_ = arms_ - list_position(learning_.current_arm()) + 1;
    begin_search();
}

void SensingTrekking::begin_search()
{
    mode_ = Mode::searching;
    candidates_ = pi2_;
    const auto& ranked = pi1_.ordered_arms();
    candidates_.insert(candidates_.end(), ranked.begin(), ranked.end());
    cand_ = 0;
    streak_ = 0;
}

void SensingTrekking::lock_on(ArmIndex arm, Round extra)
{
    mode_ = Mode::locked;
    lock_arm_ = arm;
    lock_span_ = lock_rounds_ + extra;
    lock_count_ = 0;
    lock_reward_ = 0.0;
    streak_ = 0;
}

void SensingTrekking::expire_lock()
{
    const ArmIndex arm = lock_arm_;
    auto it = std::find(pi2_.begin(), pi2_.end(), arm);
    if (it != pi2_.end()) {
        pi2_.erase(it);
        pi1_.insert(arm, lock_reward_ / static_cast<double>(lock_count_));
    }
    reserve_ = arm;
    reserve_collision_streak_ = 0;

    candidates_ = pi2_;
    const int reserve_rank = pi1_.rank_of(arm);
    for (int r = 1; r < reserve_rank; ++r) {
        candidates_.push_back(pi1_.arm_at(r));
    }
    budget_ = arms_ - list_position(arm) + 1;
    if (candidates_.empty()) {
        lock_on(arm);
        return;
    }
    mode_ = Mode::excursion;
    cand_ = 0;
    streak_ = 0;
    excursion_len_ = 0;
}

void SensingTrekking::next_excursion_candidate()
{
    streak_ = 0;
    if (++cand_ >= candidates_.size()) {
        end_excursion_on_reserve();
        return;
    }
    mode_ = Mode::excursion;
}

void SensingTrekking::end_excursion_on_reserve()
{
    excursions_.push_back(excursion_len_);
    lock_on(*reserve_);
}

Action SensingTrekking::choose(Round t)
{
    (void)t;
    switch (mode_) {
    case Mode::learning:
        return learning_.next_action(rng_);
    case Mode::searching:
    case Mode::excursion:
        return Action::sense_play(candidates_[cand_]);
    case Mode::returning:
        return Action::play(*reserve_);
    case Mode::locked:
        break;
    }
    return Action::play(lock_arm_);
}

void SensingTrekking::update(const Action& action, const RoundOutcome& outcome)
{
    switch (mode_) {
    case Mode::learning:
        learning_.observe(outcome);
        if (learning_.done()) {
            finish_learning();
        }
        return;

    case Mode::locked:
        if (outcome.collided) {
            // Both parties of a locked-state collision restart their lock
            // period in the same round; a random extra wait of up to one
            // trekking cycle keeps their next excursions from lining up again.
            const Round extra = static_cast<Round>(rng_.uniform_index(
                static_cast<std::uint64_t>(phase::t_trek_cycle(arms_)) + 1));
            if (reserve_ && lock_arm_ == *reserve_) {
                lock_on(lock_arm_, extra);
                // Two players holding the same reserve would otherwise collide
                // forever; after K straight collisions each walks away with
                // probability one half.
                if (++reserve_collision_streak_ > arms_ && rng_.uniform01() < 0.5) {
                    reserve_.reset();
                    begin_search();
                }
            } else if (reserve_) {
                lock_on(*reserve_, extra);
            } else {
                begin_search();
            }
            return;
        }
        reserve_collision_streak_ = 0;
        lock_reward_ += outcome.reward;
        if (++lock_count_ >= lock_span_) {
            expire_lock();
        }
        return;

    case Mode::searching:
        if (!outcome.sensed_busy && !outcome.collided) {
            lock_on(action.arm);
            return;
        }
        if (outcome.sensed_busy || ++streak_ >= budget_) {
            streak_ = 0;
            cand_ = (cand_ + 1) % candidates_.size();
        }
        return;

    case Mode::excursion:
        ++excursion_len_;
        if (outcome.sensed_busy) {
            next_excursion_candidate();
        } else if (outcome.collided) {
            if (++streak_ >= budget_) {
                if (cand_ + 1 >= candidates_.size()) {
                    end_excursion_on_reserve();
                } else {
                    mode_ = Mode::returning;
                }
            }
        } else {
            excursions_.push_back(excursion_len_);
            lock_on(action.arm);
        }
        return;

    case Mode::returning:
        ++excursion_len_;
        next_excursion_candidate();
        return;
    }
}

}  // namespace mpmab
