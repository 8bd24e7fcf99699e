#include "mpmab/trekking.hpp"

#include <stdexcept>

namespace mpmab {

namespace {

void check_start(const std::vector<ArmIndex>& order, int start_rank)
{
    if (order.empty()) {
        throw std::invalid_argument("trekking needs a ranked arm list");
    }
    if (start_rank < 1 || start_rank > static_cast<int>(order.size())) {
        throw std::invalid_argument("trekking start rank outside [1, K]");
    }
}

}  // namespace

TrekUp::TrekUp(std::vector<ArmIndex> order, int start_rank)
    : order_(std::move(order)), reserved_(start_rank)
{
    check_start(order_, start_rank);
    locked_ = reserved_ == 1;
}

ArmIndex TrekUp::next_arm() const
{
    return order_[static_cast<std::size_t>(current_rank() - 1)];
}

void TrekUp::observe(bool collided)
{
    if (collided) {
        ++collisions_;
    }
    if (locked_) {
        return;
    }
    if (collided) {
        locked_ = true;
        return;
    }
    ++probes_;
    if (probes_ == reserved_ - 1) {
        --reserved_;
        probes_ = 0;
        locked_ = reserved_ == 1;
    }
}

TrekDown::TrekDown(std::vector<ArmIndex> order, int start_rank)
    : order_(std::move(order)), budget_(0)
{
    check_start(order_, start_rank);
    budget_ = static_cast<int>(order_.size()) - start_rank + 1;
}

ArmIndex TrekDown::next_arm() const
{
    return order_[static_cast<std::size_t>(candidate_ - 1)];
}

void TrekDown::observe(bool collided)
{
    if (collided) {
        ++collisions_;
    }
    if (locked_) {
        return;
    }
    if (!collided) {
        locked_ = true;
        return;
    }
    if (++streak_ >= budget_) {
        streak_ = 0;
        candidate_ = candidate_ % static_cast<int>(order_.size()) + 1;
    }
}

}  // namespace mpmab
