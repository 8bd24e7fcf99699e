#include <doctest.h>

#include <set>

#include "mpmab/epoch.hpp"
#include "mpmab/musical_chairs.hpp"
#include "mpmab/phase_math.hpp"
#include "mpmab/scenario.hpp"
#include "mpmab/sensing_trekking.hpp"
#include "mpmab/simulation.hpp"
#include "mpmab/static_trekking.hpp"

using namespace mpmab;

namespace {

const std::vector<double> kMu1 = {0.22, 0.29, 0.36, 0.43, 0.50, 0.57, 0.64, 0.71, 0.78, 0.85};

ScenarioSpec static_spec(Algorithm alg, int players, Round horizon)
{
    ScenarioSpec s;
    s.name = "t";
    s.arms = 10;
    s.means = kMu1;
    s.horizon = horizon;
    s.algorithm = alg;
    s.epsilon = 0.07;
    s.overrides.t0 = 3000;
    s.overrides.t0_mc = 3000;
    s.initial_players = players;
    s.base_seed = 77;
    return s;
}

std::set<ArmIndex> top_arms(int n)
{
    std::set<ArmIndex> out;
    for (int k = 10; k > 10 - n; --k) {
        out.insert(k);
    }
    return out;
}

}  // namespace

TEST_CASE("static trekking: five players settle on the five best arms with zero regret afterwards")
{
    const auto spec = static_spec(Algorithm::st, 5, 10000);
    const auto constants = resolve_phase_constants(spec);
    Simulation sim(make_setup(spec, constants, 0));
    const Round settled = 3000 + phase::t_tr_up(10, 1);
    double tail_regret = 0.0;
    sim.run([&](const Simulation&, const RoundLedger& l) {
        if (l.round >= settled) {
            tail_regret += l.regret();
        }
    });
    std::set<ArmIndex> locked;
    for (const auto* p : sim.active_policies()) {
        REQUIRE(p->locked_arm());
        locked.insert(*p->locked_arm());
    }
    CHECK(locked == top_arms(5));
    CHECK(tail_regret == 0.0);
}

TEST_CASE("static trekking with downward trekking also reaches the optimal occupancy")
{
    auto spec = static_spec(Algorithm::st, 7, 6000);
    spec.trek = TrekVariant::down;
    Simulation sim(make_setup(spec, resolve_phase_constants(spec), 0));
    sim.run();
    std::set<ArmIndex> locked;
    for (const auto* p : sim.active_policies()) {
        REQUIRE(p->locked_arm());
        locked.insert(*p->locked_arm());
    }
    CHECK(locked == top_arms(7));
}

TEST_CASE("dynamic trekking replays static trekking inside one epoch and restarts at the boundary")
{
    PolicyParams params;
    params.arms = 4;
    params.learning_rounds = 200;
    params.epoch_length = 400;
    const std::uint64_t seed = 4242;
    DynamicTrekking dt(PlayerId{0}, params, 0, seed);
    StaticTrekking st(PlayerId{0}, 4, 200, TrekVariant::up, derive_seed(seed, 0));
    RoundOutcome clean{1.0, false, false, true, std::nullopt};
    for (Round t = 0; t < 400; ++t) {
        const Action a = dt.act(t);
        const Action b = st.act(t);
        CHECK(a == b);
        clean.arm = a.arm;
        dt.feedback(clean);
        st.feedback(clean);
    }
    CHECK(st.locked());
    CHECK(dt.locked());
    (void)dt.act(400);
    const auto* inner = dynamic_cast<const StaticTrekking*>(dt.current());
    REQUIRE(inner != nullptr);
    CHECK(inner->phase() == StaticTrekking::Phase::learning);
    CHECK(dt.inner_start() == 400);
}

TEST_CASE("restricted entrants idle until the next epoch, unrestricted ones start at once")
{
    PolicyParams params;
    params.arms = 3;
    params.learning_rounds = 50;
    params.epoch_length = 100;
    params.entry = EntryMode::restricted;
    DynamicTrekking waiting(PlayerId{1}, params, 130, 9);
    for (Round t = 130; t < 200; ++t) {
        CHECK(waiting.act(t).kind == ActionKind::absent);
        waiting.feedback(RoundOutcome{});
    }
    const Action first = waiting.act(200);
    CHECK(first.kind == ActionKind::play);
    waiting.feedback(RoundOutcome{0.0, false, false, true, first.arm});

    params.entry = EntryMode::unrestricted;
    DynamicTrekking eager(PlayerId{2}, params, 130, 9);
    CHECK(eager.act(130).kind == ActionKind::play);
    CHECK(eager.inner_start() == 130);
}

TEST_CASE("policy protocol violations")
{
    StaticTrekking p(PlayerId{0}, 3, 10, TrekVariant::up, 1);
    CHECK_THROWS_AS(p.feedback(RoundOutcome{}), std::logic_error);
    const Action a = p.act(0);
    CHECK_THROWS_AS((void)p.act(1), std::logic_error);
    RoundOutcome wrong{0.0, false, false, true, a.arm % 3 + 1};
    CHECK_THROWS_AS(p.feedback(wrong), std::logic_error);
    p.feedback(RoundOutcome{0.0, false, false, true, a.arm});
    p.leave();
    CHECK_THROWS_AS((void)p.act(1), std::logic_error);
    CHECK_THROWS_AS(EpochClock(0), std::invalid_argument);
}

TEST_CASE("musical chairs player-count estimator")
{
    CHECK(mc_estimate_players(0, 10000, 10) == 1);
    // (1 - 1/10)^4 = 0.6561 of the rounds collision-free -> five players
    CHECK(mc_estimate_players(3439, 10000, 10) == 5);
    // every round collided: the estimate saturates at K
    CHECK(mc_estimate_players(10000, 10000, 10) == 10);
    CHECK_THROWS_AS(mc_estimate_players(1, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(mc_estimate_players(11, 10, 10), std::invalid_argument);
    CHECK_THROWS_AS(mc_estimate_players(1, 10, 1), std::invalid_argument);
}

TEST_CASE("musical chairs uses an injected estimator and locks on the best arms")
{
    auto spec = static_spec(Algorithm::mc, 4, 8000);
    auto constants = resolve_phase_constants(spec);
    auto setup = make_setup(spec, constants, 0);
    int calls = 0;
    setup.params.estimator = [&](std::int64_t, Round, int) {
        ++calls;
        return 4;
    };
    Simulation sim(std::move(setup));
    sim.run();
    CHECK(calls == 4);
    std::set<ArmIndex> locked;
    for (const auto* p : sim.active_policies()) {
        const auto* mc = dynamic_cast<const MusicalChairs*>(p);
        REQUIRE(mc != nullptr);
        CHECK(mc->player_estimate() == 4);
        REQUIRE(mc->locked_arm());
        locked.insert(*mc->locked_arm());
    }
    CHECK(locked == top_arms(4));
}

TEST_CASE("sensing trekking: players keep distinct arms and collisions stay rare")
{
    ScenarioSpec spec;
    spec.name = "dts";
    spec.arms = 4;
    spec.means = {0.05, 0.35, 0.65, 0.95};
    spec.horizon = 40000;
    spec.algorithm = Algorithm::dts;
    spec.epsilon = 0.2;
    spec.initial_players = 3;
    spec.events = {{10000, EventKind::enter, std::nullopt}, {20000, EventKind::leave, 1}};
    spec.base_seed = 5;
    const auto constants = resolve_phase_constants(spec);
    for (int rep = 0; rep < 6; ++rep) {
        Simulation sim(make_setup(spec, constants, rep));
        Round collision_rounds = 0;
        sim.run([&](const Simulation&, const RoundLedger& l) {
            if (l.round >= 30000 && l.collisions > 0) {
                ++collision_rounds;
            }
        });
        // Overlapping excursions can still collide now and then, but a pair
        // colliding every lock period would show up as one per T_l.
        CHECK(collision_rounds * 4 < 10000 / constants.t_l);
        std::set<ArmIndex> held;
        for (const auto* p : sim.active_policies()) {
            const auto* s = dynamic_cast<const SensingTrekking*>(p);
            REQUIRE(s != nullptr);
            CHECK(s->mode() != SensingTrekking::Mode::learning);
            for (Round len : s->excursion_lengths()) {
                CHECK(len <= constants.trek_cycle);
            }
            if (s->locked_arm()) {
                held.insert(*s->locked_arm());
            }
        }
        CHECK(held.size() == sim.active_policies().size());
    }
}

TEST_CASE("sensing trekking parameter checks")
{
    PolicyParams params;
    params.arms = 3;
    params.dts_learning_rounds = 0;
    params.lock_rounds = 10;
    CHECK_THROWS_AS(SensingTrekking(PlayerId{0}, params, 1), std::invalid_argument);
    params.dts_learning_rounds = 10;
    params.lock_rounds = 0;
    CHECK_THROWS_AS(SensingTrekking(PlayerId{0}, params, 1), std::invalid_argument);
}

TEST_CASE("algorithm names parse and print")
{
    for (auto a : {Algorithm::st, Algorithm::dt, Algorithm::dts, Algorithm::mc, Algorithm::dmc}) {
        CHECK(parse_algorithm(to_string(a)) == a);
    }
    CHECK(parse_trek_variant("down") == TrekVariant::down);
    CHECK(parse_entry_mode("unrestricted") == EntryMode::unrestricted);
    CHECK_THROWS_AS(parse_algorithm("ucb"), std::invalid_argument);
}
