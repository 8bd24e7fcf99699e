#pragma once

#include <vector>

#include "mpmab/types.hpp"

namespace mpmab {

/// Upward trekking. Starting from reserved rank J, the player probes rank J-1;
/// J-1 consecutive collision-free rounds promote the reserve to J-1 and the
/// probe moves on to J-2. A collision while probing locks the player on the
/// reserve; reaching rank 1 locks on the top arm. Collisions after locking are
/// ignored.
class TrekUp {
public:
    /// `order[r-1]` is the arm of rank r.
    TrekUp(std::vector<ArmIndex> order, int start_rank);

    ArmIndex next_arm() const;
    void observe(bool collided);

    bool locked() const { return locked_; }
    int reserved_rank() const { return reserved_; }
    /// Rank being played next round.
    int current_rank() const { return locked_ ? reserved_ : reserved_ - 1; }
    int probe_count() const { return probes_; }
    int collisions() const { return collisions_; }

private:
    std::vector<ArmIndex> order_;
    int reserved_;
    int probes_ = 0;
    bool locked_ = false;
    int collisions_ = 0;
};

/// Downward trekking with back-off. The player tries ranks 1, 2, 3, ... in
/// turn; each candidate is kept for up to `budget` collided rounds, where the
/// budget K - i + 1 is fixed by the end-of-learning rank i. The first
/// collision-free round locks the player on the candidate.
class TrekDown {
public:
    TrekDown(std::vector<ArmIndex> order, int start_rank);

    ArmIndex next_arm() const;
    void observe(bool collided);

    bool locked() const { return locked_; }
    int candidate_rank() const { return candidate_; }
    int backoff_budget() const { return budget_; }
    int collision_streak() const { return streak_; }
    int collisions() const { return collisions_; }

private:
    std::vector<ArmIndex> order_;
    int budget_;
    int candidate_ = 1;
    int streak_ = 0;
    bool locked_ = false;
    int collisions_ = 0;
};

}  // namespace mpmab
