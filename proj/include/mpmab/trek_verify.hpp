#pragma once

#include <string>
#include <vector>

#include "mpmab/policy.hpp"

namespace mpmab {

/// Trekking from a fixed set of end-of-learning ranks, all players sharing
/// the correct ranking (arm r has rank r).
struct TrekTrace {
    std::vector<int> start_ranks;
    std::vector<std::vector<ArmIndex>> arms;  ///< arms[p][s], s = 0 is the start arm
    std::vector<int> collisions;              ///< per player, after learning
    std::vector<bool> locked;                 ///< at the end of the trace
    Round settle_round = 0;  ///< latest start of a player's final constant-arm run
};

/// Plays `rounds` trekking rounds. A player starting on rank 1 stays there
/// without trekking.
TrekTrace simulate_trekking(TrekVariant variant, int arms, const std::vector<int>& start_ranks,
                            Round rounds);

struct TrekCheck {
    TrekVariant variant = TrekVariant::up;
    int arms = 0;
    int players = 0;
    std::size_t cases = 0;
    Round worst_settle = 0;
    Round bound = 0;
    int worst_collisions = 0;
    std::vector<std::string> violations;
};

/// Every K in [2, max_arms], N in [1, K] and ordered assignment of N players
/// to distinct starting ranks, for the given variant: all players end locked
/// on ranks 1..N within the settling bound; with upward trekking no player
/// sees more than two collisions.
std::vector<TrekCheck> verify_trekking(TrekVariant variant, int max_arms);

}  // namespace mpmab
