#include "mpmab/learning.hpp"

#include <stdexcept>

namespace mpmab {

LearningPhase::LearningPhase(int arms, Round budget, bool sense_before_play)
    : arms_(arms),
      budget_(budget),
      sense_(sense_before_play),
      plays_(static_cast<std::size_t>(arms), 0),
      rewards_(static_cast<std::size_t>(arms), 0.0)
{
    if (arms < 2) {
        throw std::invalid_argument("learning needs K > 1 arms");
    }
    if (budget < 0) {
        throw std::invalid_argument("negative learning budget");
    }
}

Action LearningPhase::next_action(Rng& rng)
{
    if (done()) {
        throw std::logic_error("learning phase already finished");
    }
    if (awaiting_) {
        throw std::logic_error("learning phase asked to act twice without feedback");
    }
    if (orthogonalized_) {
        current_ = current_ % arms_ + 1;
    } else {
        current_ = rng.uniform_int(1, arms_);
    }
    awaiting_ = true;
    return sense_ ? Action::sense_play(current_) : Action::play(current_);
}

void LearningPhase::observe(const RoundOutcome& outcome)
{
    if (!awaiting_) {
        throw std::logic_error("learning feedback without a pending action");
    }
    awaiting_ = false;
    const auto k = static_cast<std::size_t>(current_ - 1);
    last_clean_ = outcome.transmitted && !outcome.collided;
    if (outcome.transmitted) {
        ++plays_[k];
    }
    if (last_clean_) {
        rewards_[k] += outcome.reward;
        if (!orthogonalized_) {
            orthogonalized_ = true;
            orthogonalized_at_ = elapsed_;
        }
    }
    ++elapsed_;
}

std::vector<double> LearningPhase::empirical_means() const
{
    std::vector<double> out(plays_.size(), 0.0);
    for (std::size_t k = 0; k < plays_.size(); ++k) {
        if (plays_[k] > 0) {
            out[k] = rewards_[k] / static_cast<double>(plays_[k]);
        }
    }
    return out;
}

}  // namespace mpmab
