#include <doctest.h>

#include <numeric>

#include "mpmab/learning.hpp"
#include "mpmab/ranking.hpp"
#include "mpmab/trek_verify.hpp"
#include "mpmab/trekking.hpp"

using namespace mpmab;

TEST_CASE("ranking orders by mean, ties by arm index")
{
    const RankingEstimate r({0.3, 0.9, 0.3, 0.5});
    CHECK(r.ordered_arms() == std::vector<ArmIndex>{2, 4, 1, 3});
    CHECK(r.rank_of(2) == 1);
    CHECK(r.rank_of(3) == 4);
    CHECK(r.arm_at(2) == 4);
}

TEST_CASE("partial ranking and insertion")
{
    const std::vector<ArmIndex> arms = {1, 3};
    RankingEstimate r({0.2, 0.0, 0.6, 0.0}, arms);
    CHECK(r.size() == 2);
    CHECK(r.ordered_arms() == std::vector<ArmIndex>{3, 1});
    CHECK_FALSE(r.contains(2));
    CHECK(r.rank_of(2) == 0);
    r.insert(2, 0.4);
    CHECK(r.ordered_arms() == std::vector<ArmIndex>{3, 2, 1});
    CHECK(r.mean_of(2) == 0.4);
}

TEST_CASE("epsilon-correct ranking")
{
    const std::vector<double> truth = {0.1, 0.2, 0.3};
    CHECK(is_epsilon_correct(RankingEstimate({0.1, 0.2, 0.3}), truth, 0.05));
    // arms 2 and 3 swapped; allowed only while their gap stays below epsilon
    CHECK(is_epsilon_correct(RankingEstimate({0.1, 0.35, 0.3}), truth, 0.15));
    CHECK_FALSE(is_epsilon_correct(RankingEstimate({0.1, 0.35, 0.3}), truth, 0.1));
    CHECK_FALSE(is_epsilon_correct(RankingEstimate({0.4, 0.2, 0.3}), truth, 0.1));
}

TEST_CASE("learning phase counts transmissions, pays only clean rounds, spends its budget")
{
    LearningPhase lp(4, 100);
    Rng rng(5);
    Round clean = 0;
    while (!lp.done()) {
        const Action a = lp.next_action(rng);
        CHECK(a.kind == ActionKind::play);
        CHECK(a.arm >= 1);
        CHECK(a.arm <= 4);
        const bool collide = lp.rounds_elapsed() < 10;
        RoundOutcome o;
        o.arm = a.arm;
        o.transmitted = true;
        o.collided = collide;
        o.reward = collide ? 0.0 : 1.0;
        clean += !collide;
        lp.observe(o);
    }
    CHECK(lp.rounds_elapsed() == 100);
    CHECK(lp.orthogonalized());
    CHECK(lp.orthogonalized_at() == 10);
    const auto& plays = lp.play_counts();
    CHECK(std::accumulate(plays.begin(), plays.end(), std::int64_t{0}) == 100);
    const auto& sums = lp.reward_sums();
    CHECK(std::accumulate(sums.begin(), sums.end(), 0.0) == static_cast<double>(clean));
}

TEST_CASE("learning phase hops while colliding, then walks the arms in sequence")
{
    LearningPhase lp(5, 50);
    Rng rng(1);
    Action a = lp.next_action(rng);
    RoundOutcome o{0.0, false, false, true, a.arm};
    o.reward = 0.5;
    lp.observe(o);
    ArmIndex prev = a.arm;
    for (int i = 0; i < 20; ++i) {
        a = lp.next_action(rng);
        CHECK(a.arm == prev % 5 + 1);
        lp.observe(RoundOutcome{0.5, false, false, true, a.arm});
        prev = a.arm;
    }
}

TEST_CASE("learning phase protocol errors")
{
    LearningPhase lp(3, 2);
    Rng rng(0);
    CHECK_THROWS_AS(lp.observe(RoundOutcome{}), std::logic_error);
    (void)lp.next_action(rng);
    CHECK_THROWS_AS((void)lp.next_action(rng), std::logic_error);
}

TEST_CASE("upward trekking with three arms: rank 3 walks up and locks below rank 1")
{
    const auto trace = simulate_trekking(TrekVariant::up, 3, {1, 3}, 8);
    CHECK(trace.arms[0] == std::vector<ArmIndex>{1, 1, 1, 1, 1, 1, 1, 1, 1});
    // probes rank 2 twice, then rank 1 once, collides, locks on 2
    CHECK(trace.arms[1] == std::vector<ArmIndex>{3, 2, 2, 1, 2, 2, 2, 2, 2});
    CHECK(trace.collisions[1] == 1);
    CHECK(trace.locked[1]);
}

TEST_CASE("upward trekking: a lone player climbs to rank 1")
{
    TrekUp up({7, 8, 9, 10}, 4);
    std::vector<ArmIndex> seen;
    while (!up.locked()) {
        seen.push_back(up.next_arm());
        up.observe(false);
    }
    // three probes of rank 3, two of rank 2, one of rank 1
    CHECK(seen == std::vector<ArmIndex>{9, 9, 9, 8, 8, 7});
    CHECK(up.next_arm() == 7);
    CHECK(up.collisions() == 0);
}

TEST_CASE("downward trekking with three arms and two players")
{
    const auto trace = simulate_trekking(TrekVariant::down, 3, {2, 3}, 6);
    // both start on arm 1 and collide; rank 3 has budget 1 and moves on
    CHECK(trace.arms[0] == std::vector<ArmIndex>{2, 1, 1, 1, 1, 1, 1});
    CHECK(trace.arms[1] == std::vector<ArmIndex>{3, 1, 2, 2, 2, 2, 2});
    CHECK(trace.collisions == std::vector<int>{1, 1});
}

TEST_CASE("downward trekking wraps past the last arm")
{
    TrekDown down({1, 2, 3}, 3);
    CHECK(down.backoff_budget() == 1);
    for (ArmIndex expect : {1, 2, 3, 1}) {
        CHECK(down.next_arm() == expect);
        down.observe(true);
    }
    down.observe(false);
    CHECK(down.locked());
}

TEST_CASE("trekking argument checks")
{
    CHECK_THROWS_AS(TrekUp({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(TrekUp({1, 2}, 3), std::invalid_argument);
    CHECK_THROWS_AS(TrekDown({1, 2}, 0), std::invalid_argument);
}

TEST_CASE("exhaustive settling within the bound for K <= 5")
{
    for (auto variant : {TrekVariant::up, TrekVariant::down}) {
        for (const auto& c : verify_trekking(variant, 5)) {
            INFO("K=" << c.arms << " N=" << c.players);
            CHECK(c.violations.empty());
            CHECK(c.worst_settle <= c.bound);
            if (variant == TrekVariant::up) {
                CHECK(c.worst_collisions <= 2);
            }
        }
    }
}
