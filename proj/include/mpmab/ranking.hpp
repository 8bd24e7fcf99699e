#pragma once

#include <span>
#include <vector>

#include "mpmab/types.hpp"

namespace mpmab {

/// Arms ordered by descending empirical mean; ties go to the lower arm index.
class RankingEstimate {
public:
    RankingEstimate() = default;

    /// `means[k-1]` is the estimate for arm k.
    explicit RankingEstimate(std::vector<double> means);

    /// Ranks only `arms` (a subset of [1, K]); `means` still covers all K arms.
    RankingEstimate(std::vector<double> means, std::span<const ArmIndex> arms);

    int size() const { return static_cast<int>(order_.size()); }
    bool empty() const { return order_.empty(); }

    /// Arm holding rank r, r in [1, size()].
    ArmIndex arm_at(int rank) const { return order_.at(static_cast<std::size_t>(rank - 1)); }

    /// Rank of `arm`, or 0 when the arm is not ranked.
    int rank_of(ArmIndex arm) const;

    bool contains(ArmIndex arm) const { return rank_of(arm) != 0; }

    const std::vector<ArmIndex>& ordered_arms() const { return order_; }
    const std::vector<double>& means() const { return means_; }
    double mean_of(ArmIndex arm) const { return means_.at(static_cast<std::size_t>(arm - 1)); }

    /// Inserts `arm` with estimate `mean` and re-sorts.
    void insert(ArmIndex arm, double mean);

private:
    void sort();

    std::vector<double> means_;
    std::vector<ArmIndex> order_;
    std::vector<int> rank_;  // by arm index, 0 = unranked
};

/// True iff every pair with true_means[i] - true_means[j] >= epsilon has i
/// ranked before j. A 1e-12 slack absorbs decimal means such as 0.15 - 0.05.
bool is_epsilon_correct(const RankingEstimate& ranking, std::span<const double> true_means,
                        double epsilon);

}  // namespace mpmab
