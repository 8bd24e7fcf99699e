#include "mpmab/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mpmab {

RankingEstimate::RankingEstimate(std::vector<double> means) : means_(std::move(means))
{
    order_.resize(means_.size());
    std::iota(order_.begin(), order_.end(), 1);
    sort();
}

RankingEstimate::RankingEstimate(std::vector<double> means, std::span<const ArmIndex> arms)
    : means_(std::move(means)), order_(arms.begin(), arms.end())
{
    for (ArmIndex a : order_) {
        if (a < 1 || a > static_cast<int>(means_.size())) {
            throw std::out_of_range("ranked arm outside [1, K]");
        }
    }
    sort();
}

void RankingEstimate::sort()
{
    std::stable_sort(order_.begin(), order_.end(), [this](ArmIndex a, ArmIndex b) {
        const double ma = means_[static_cast<std::size_t>(a - 1)];
        const double mb = means_[static_cast<std::size_t>(b - 1)];
        if (ma != mb) {
            return ma > mb;
        }
        return a < b;
    });
    rank_.assign(means_.size() + 1, 0);
    for (std::size_t i = 0; i < order_.size(); ++i) {
        rank_[static_cast<std::size_t>(order_[i])] = static_cast<int>(i) + 1;
    }
}

int RankingEstimate::rank_of(ArmIndex arm) const
{
    if (arm < 1 || arm >= static_cast<int>(rank_.size())) {
        return 0;
    }
    return rank_[static_cast<std::size_t>(arm)];
}

void RankingEstimate::insert(ArmIndex arm, double mean)
{
    if (arm < 1 || arm > static_cast<int>(means_.size())) {
        throw std::out_of_range("ranked arm outside [1, K]");
    }
    means_[static_cast<std::size_t>(arm - 1)] = mean;
    if (!contains(arm)) {
        order_.push_back(arm);
    }
    sort();
}

bool is_epsilon_correct(const RankingEstimate& ranking, std::span<const double> true_means,
                        double epsilon)
{
    const int k = static_cast<int>(true_means.size());
    if (ranking.size() != k) {
        return false;
    }
    for (ArmIndex i = 1; i <= k; ++i) {
        for (ArmIndex j = 1; j <= k; ++j) {
            const double gap = true_means[static_cast<std::size_t>(i - 1)] -
                               true_means[static_cast<std::size_t>(j - 1)];
            if (gap >= epsilon - 1e-12 && ranking.rank_of(i) > ranking.rank_of(j)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace mpmab
