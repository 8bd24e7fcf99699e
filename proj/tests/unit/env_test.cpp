#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "mpmab/env.hpp"

using namespace mpmab;

namespace {

Environment make_env(std::vector<double> means, bool sensing = false, std::uint64_t seed = 7)
{
    EnvironmentConfig cfg;
    for (double m : means) {
        cfg.arms.push_back({m, RewardKind::bernoulli});
    }
    cfg.seed = seed;
    cfg.sensing = sensing;
    return Environment(std::move(cfg));
}

void enter_all(Environment& env, int n)
{
    for (int i = 0; i < n; ++i) {
        env.enter(PlayerId{i});
    }
}

}  // namespace

TEST_CASE("two players on one arm both collide with zero reward")
{
    auto env = make_env({0.1, 0.2, 0.3, 0.4, 1.0});
    enter_all(env, 2);
    const std::vector<PlayerAction> actions = {{PlayerId{0}, Action::play(5)},
                                               {PlayerId{1}, Action::play(5)}};
    const auto out = env.resolve_round(actions);
    for (const auto& o : out) {
        CHECK(o.collided);
        CHECK(o.reward == 0.0);
        CHECK(o.transmitted);
        CHECK(o.arm == 5);
    }
    CHECK(env.round() == 1);
}

TEST_CASE("solo play on a mean-one Bernoulli arm pays one")
{
    auto env = make_env({0.0, 1.0});
    enter_all(env, 1);
    const std::vector<PlayerAction> actions = {{PlayerId{0}, Action::play(2)}};
    for (int t = 0; t < 20; ++t) {
        const auto out = env.resolve_round(actions);
        CHECK(out[0].reward == 1.0);
        CHECK_FALSE(out[0].collided);
        CHECK_FALSE(out[0].sensed_busy);
    }
}

TEST_CASE("sense-play on an arm held by a player refrains; the holder is paid")
{
    auto env = make_env({0.2, 0.5, 1.0}, true);
    enter_all(env, 2);
    const std::vector<PlayerAction> actions = {{PlayerId{0}, Action::play(3)},
                                               {PlayerId{1}, Action::sense_play(3)}};
    const auto out = env.resolve_round(actions);
    CHECK_FALSE(out[0].collided);
    CHECK(out[0].reward == 1.0);
    CHECK(out[1].sensed_busy);
    CHECK_FALSE(out[1].transmitted);
    CHECK_FALSE(out[1].collided);
    CHECK(out[1].reward == 0.0);
}

TEST_CASE("simultaneous sense-plays on a free arm both transmit and collide")
{
    auto env = make_env({0.2, 0.5, 1.0}, true);
    enter_all(env, 3);
    const std::vector<PlayerAction> actions = {{PlayerId{1}, Action::sense_play(2)},
                                               {PlayerId{2}, Action::sense_play(2)}};
    const auto out = env.resolve_round(actions);
    for (const auto& o : out) {
        CHECK_FALSE(o.sensed_busy);
        CHECK(o.transmitted);
        CHECK(o.collided);
        CHECK(o.reward == 0.0);
    }
}

TEST_CASE("a pure sense never transmits and is not heard by other sensers")
{
    auto env = make_env({0.2, 1.0}, true);
    enter_all(env, 2);
    const std::vector<PlayerAction> actions = {{PlayerId{0}, Action::sense(2)},
                                               {PlayerId{1}, Action::sense_play(2)}};
    const auto out = env.resolve_round(actions);
    CHECK_FALSE(out[0].sensed_busy);
    CHECK_FALSE(out[0].transmitted);
    CHECK(out[1].transmitted);
    CHECK(out[1].reward == 1.0);
}

TEST_CASE("contract violations are rejected")
{
    auto env = make_env({0.2, 0.5});
    enter_all(env, 1);
    SUBCASE("inactive player")
    {
        const std::vector<PlayerAction> a = {{PlayerId{3}, Action::play(1)}};
        CHECK_THROWS_AS(env.resolve_round(a), EnvironmentError);
    }
    SUBCASE("arm out of range")
    {
        const std::vector<PlayerAction> a = {{PlayerId{0}, Action::play(3)}};
        CHECK_THROWS_AS(env.resolve_round(a), EnvironmentError);
        const std::vector<PlayerAction> b = {{PlayerId{0}, Action::play(0)}};
        CHECK_THROWS_AS(env.resolve_round(b), EnvironmentError);
    }
    SUBCASE("sensing disabled")
    {
        const std::vector<PlayerAction> a = {{PlayerId{0}, Action::sense_play(1)}};
        CHECK_THROWS_AS(env.resolve_round(a), EnvironmentError);
    }
    SUBCASE("same player twice")
    {
        const std::vector<PlayerAction> a = {{PlayerId{0}, Action::play(1)},
                                             {PlayerId{0}, Action::play(2)}};
        CHECK_THROWS_AS(env.resolve_round(a), EnvironmentError);
    }
    CHECK(env.round() == 0);
}

TEST_CASE("environment construction checks K and the means")
{
    CHECK_THROWS_AS(make_env({0.5}), EnvironmentError);
    CHECK_THROWS_AS(make_env({0.5, 1.5}), EnvironmentError);
    CHECK_THROWS_AS(make_env({0.5, -0.1}), EnvironmentError);
    CHECK_NOTHROW(make_env({0.0, 1.0}));
}

TEST_CASE("population changes")
{
    auto env = make_env({0.1, 0.2, 0.3});
    env.enter(PlayerId{0});
    CHECK_THROWS_AS(env.enter(PlayerId{0}), EnvironmentError);
    CHECK_THROWS_AS(env.leave(PlayerId{4}), EnvironmentError);
    env.enter(PlayerId{1});
    env.enter(PlayerId{2});
    CHECK_THROWS_AS(env.enter(PlayerId{3}), EnvironmentError);  // K cap
    env.leave(PlayerId{1});
    CHECK_THROWS_AS(env.enter(PlayerId{1}), EnvironmentError);  // no re-entry
    CHECK(env.active_count() == 2);
    CHECK(env.entered_total() == 3);
    CHECK(env.left_total() == 1);

    EnvironmentConfig cfg;
    cfg.arms = {{0.1}, {0.2}};
    cfg.relaxed_population = true;
    Environment relaxed(cfg);
    for (int i = 0; i < 4; ++i) {
        relaxed.enter(PlayerId{i});
    }
    CHECK(relaxed.active_count() == 4);
}

TEST_CASE("scheduled events: one player, an entry, then the first player leaves")
{
    auto env = make_env({0.05, 0.35, 0.65, 0.95});
    env.enter(PlayerId{0});
    const std::vector<PopulationEvent> events = {PopulationEvent::enter(3, PlayerId{1}),
                                                 PopulationEvent::leave(6, PlayerId{0})};
    std::vector<std::size_t> counts;
    std::size_t next = 0;
    for (Round t = 0; t < 9; ++t) {
        std::vector<PopulationEvent> due;
        while (next < events.size() && events[next].round == t) {
            due.push_back(events[next++]);
        }
        const auto changes = env.apply_population_events(due);
        if (t == 3) {
            CHECK(changes.entered == std::vector<PlayerId>{PlayerId{1}});
        }
        counts.push_back(env.active_count());
        env.resolve_round(std::vector<PlayerAction>{});
    }
    CHECK(counts == std::vector<std::size_t>{1, 1, 1, 2, 2, 2, 1, 1, 1});
    CHECK(env.is_active(PlayerId{1}));
    CHECK_FALSE(env.is_active(PlayerId{0}));
}

TEST_CASE("population events must match the current round")
{
    auto env = make_env({0.1, 0.2});
    const std::vector<PopulationEvent> late = {PopulationEvent::enter(2, PlayerId{0})};
    CHECK_THROWS_AS(env.apply_population_events(late), EnvironmentError);
    const std::vector<PopulationEvent> empty_leave = {PopulationEvent::leave_random(0)};
    CHECK_THROWS_AS(env.apply_population_events(empty_leave), EnvironmentError);
}

TEST_CASE("random leaves are seeded and pick an active player")
{
    auto run = [](std::uint64_t seed) {
        auto env = make_env({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, false, seed);
        enter_all(env, 6);
        std::vector<PopulationEvent> ev = {PopulationEvent::leave_random(0)};
        const auto changes = env.apply_population_events(ev);
        REQUIRE(changes.left.size() == 1);
        CHECK(to_int(changes.left[0]) >= 0);
        CHECK(to_int(changes.left[0]) < 6);
        CHECK_FALSE(env.is_active(changes.left[0]));
        return changes.left[0];
    };
    CHECK(run(11) == run(11));
    std::set<int> seen;
    for (std::uint64_t s = 0; s < 200; ++s) {
        seen.insert(to_int(run(s)));
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("identical seed and actions give bit-identical traces")
{
    auto trace = [](std::uint64_t seed) {
        auto env = make_env({0.3, 0.5, 0.7}, true, seed);
        enter_all(env, 3);
        Rng rng(99);
        std::vector<double> rewards;
        for (int t = 0; t < 500; ++t) {
            std::vector<PlayerAction> a;
            for (int p = 0; p < 3; ++p) {
                const int arm = rng.uniform_int(1, 3);
                a.push_back({PlayerId{p}, rng.uniform01() < 0.5 ? Action::play(arm)
                                                                : Action::sense_play(arm)});
            }
            for (const auto& o : env.resolve_round(a)) {
                rewards.push_back(o.reward + (o.collided ? 10.0 : 0.0) + (o.sensed_busy ? 100.0 : 0.0));
            }
        }
        return rewards;
    };
    CHECK(trace(5) == trace(5));
    CHECK(trace(5) != trace(6));
}

TEST_CASE("reward streams depend only on seed, arm and round")
{
    auto a = make_env({0.5, 0.5, 0.5}, false, 3);
    auto b = make_env({0.5, 0.5, 0.5}, false, 3);
    for (Round t = 0; t < 100; ++t) {
        for (ArmIndex k = 1; k <= 3; ++k) {
            CHECK(a.sample_reward(k, t) == b.sample_reward(k, t));
        }
    }
}

TEST_CASE("conservation: paid outcomes equal arms with exactly one transmitter")
{
    auto env = make_env({0.9, 0.9, 0.9, 0.9}, true, 21);
    enter_all(env, 4);
    Rng rng(3);
    for (int t = 0; t < 2000; ++t) {
        std::vector<PlayerAction> a;
        std::vector<int> transmitters(5, 0);
        std::vector<int> players_on(5, 0);
        for (int p = 0; p < 4; ++p) {
            const int arm = rng.uniform_int(1, 4);
            const bool sense = rng.uniform01() < 0.3;
            a.push_back({PlayerId{p}, sense ? Action::sense_play(arm) : Action::play(arm)});
            if (!sense) {
                ++players_on[static_cast<std::size_t>(arm)];
            }
        }
        const auto out = env.resolve_round(a);
        int solo_arms = 0;
        int solo_outcomes = 0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (out[i].transmitted) {
                ++transmitters[static_cast<std::size_t>(*out[i].arm)];
            }
        }
        for (int k = 1; k <= 4; ++k) {
            solo_arms += transmitters[static_cast<std::size_t>(k)] == 1;
        }
        for (const auto& o : out) {
            solo_outcomes += o.transmitted && !o.collided;
        }
        CHECK(solo_arms == solo_outcomes);
    }
}

TEST_CASE("Bernoulli solo rewards average to the mean within three sigma")
{
    for (double mu : {0.05, 0.35, 0.65, 0.95}) {
        auto env = make_env({mu, 0.5}, false, 1234);
        env.enter(PlayerId{0});
        const std::vector<PlayerAction> a = {{PlayerId{0}, Action::play(1)}};
        const int m = 20000;
        double sum = 0.0;
        for (int t = 0; t < m; ++t) {
            const double r = env.resolve_round(a)[0].reward;
            CHECK((r == 0.0 || r == 1.0));
            sum += r;
        }
        CHECK(std::abs(sum / m - mu) <= 3.0 * std::sqrt(mu * (1.0 - mu) / m));
    }
}

TEST_CASE("uniform rewards stay in [0,1] around the mean")
{
    for (double mu : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        ArmModel arm{mu, RewardKind::uniform};
        double sum = 0.0;
        Rng rng(8);
        for (int i = 0; i < 10000; ++i) {
            const double r = arm.reward_from_uniform(rng.uniform01());
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
            sum += r;
        }
        CHECK(sum / 10000 == doctest::Approx(mu).epsilon(0.02));
    }
}

TEST_CASE("collision indicator matches transmitter counts for every action profile (K<=3, players<=3)")
{
    const std::vector<ActionKind> kinds = {ActionKind::play, ActionKind::sense_play,
                                           ActionKind::sense, ActionKind::absent};
    std::size_t profiles = 0;
    for (int k = 2; k <= 3; ++k) {
        for (int n = 1; n <= k; ++n) {
            // each player: (kind, arm) with absent carrying no arm
            std::vector<Action> choices;
            for (auto kind : kinds) {
                if (kind == ActionKind::absent) {
                    choices.push_back(Action::absent());
                    continue;
                }
                for (int arm = 1; arm <= k; ++arm) {
                    choices.push_back({kind, arm});
                }
            }
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            std::function<void(int)> rec = [&](int p) {
                if (p == n) {
                    ++profiles;
                    std::vector<double> means(static_cast<std::size_t>(k), 0.5);
                    auto env = make_env(means, true);
                    for (int i = 0; i < n; ++i) env.enter(PlayerId{i});
                    std::vector<PlayerAction> a;
                    for (int i = 0; i < n; ++i) {
                        a.push_back({PlayerId{i}, choices[idx[static_cast<std::size_t>(i)]]});
                    }
                    const auto out = env.resolve_round(a);
                    for (int i = 0; i < n; ++i) {
                        const auto& me = a[static_cast<std::size_t>(i)].action;
                        int other_plays = 0;
                        for (int j = 0; j < n; ++j) {
                            const auto& them = a[static_cast<std::size_t>(j)].action;
                            if (j != i && them.kind == ActionKind::play && them.arm == me.arm) {
                                ++other_plays;
                            }
                        }
                        const bool busy = me.uses_sensing() && other_plays > 0;
                        const bool transmits = me.kind == ActionKind::play ||
                                               (me.kind == ActionKind::sense_play && !busy);
                        int transmitters = 0;
                        for (int j = 0; j < n; ++j) {
                            transmitters += out[static_cast<std::size_t>(j)].transmitted &&
                                            out[static_cast<std::size_t>(j)].arm == me.arm;
                        }
                        const auto& o = out[static_cast<std::size_t>(i)];
                        CHECK(o.sensed_busy == busy);
                        CHECK(o.transmitted == transmits);
                        CHECK(o.collided == (transmits && transmitters >= 2));
                        if (o.collided) {
                            CHECK(o.reward == 0.0);
                        }
                        if (me.kind == ActionKind::play) {
                            CHECK_FALSE(o.sensed_busy);
                        }
                    }
                    return;
                }
                for (std::size_t c = 0; c < choices.size(); ++c) {
                    idx[static_cast<std::size_t>(p)] = c;
                    rec(p + 1);
                }
            };
            rec(0);
        }
    }
    CHECK(profiles > 1000);
}
