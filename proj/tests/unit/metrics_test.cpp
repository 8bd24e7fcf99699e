#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "mpmab/env.hpp"
#include "mpmab/metrics.hpp"

using namespace mpmab;

namespace {

const std::vector<double> kMu1 = {0.22, 0.29, 0.36, 0.43, 0.50, 0.57, 0.64, 0.71, 0.78, 0.85};

RoundOutcome solo(ArmIndex arm) { return {1.0, false, false, true, arm}; }
RoundOutcome hit(ArmIndex arm) { return {0.0, true, false, true, arm}; }

// Best sum over every n-subset of the arms, enumerated by bitmask.
double brute_oracle(const std::vector<double>& means, int n)
{
    const int k = static_cast<int>(means.size());
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (std::popcount(mask) != std::min(n, k)) {
            continue;
        }
        double sum = 0.0;
        for (int a = 0; a < k; ++a) {
            if (mask & (1u << a)) {
                sum += means[static_cast<std::size_t>(a)];
            }
        }
        best = std::max(best, sum);
    }
    return best;
}

}  // namespace

TEST_CASE("round regret examples")
{
    const std::vector<PlayerAction> both_best = {{PlayerId{0}, Action::play(10)},
                                                 {PlayerId{1}, Action::play(10)}};
    CHECK(round_regret(both_best, std::vector<RoundOutcome>{hit(10), hit(10)}, kMu1, 2) ==
          doctest::Approx(1.63));

    const std::vector<PlayerAction> optimal = {{PlayerId{0}, Action::play(10)},
                                               {PlayerId{1}, Action::play(9)}};
    CHECK(round_regret(optimal, std::vector<RoundOutcome>{solo(10), solo(9)}, kMu1, 2) == 0.0);

    const std::vector<PlayerAction> poor = {{PlayerId{0}, Action::play(10)},
                                            {PlayerId{1}, Action::play(1)}};
    CHECK(round_regret(poor, std::vector<RoundOutcome>{solo(10), solo(1)}, kMu1, 2) ==
          doctest::Approx(0.56));
}

TEST_CASE("sensing and idle players contribute nothing")
{
    const std::vector<PlayerAction> a = {{PlayerId{0}, Action::play(10)},
                                         {PlayerId{1}, Action::sense_play(10)},
                                         {PlayerId{2}, Action::absent()}};
    const std::vector<RoundOutcome> o = {solo(10), RoundOutcome{0.0, false, true, false, 10},
                                         RoundOutcome{}};
    CHECK(round_regret(a, o, kMu1, 3) == doctest::Approx(0.78 + 0.71));
}

TEST_CASE("collision counts")
{
    CHECK(round_collisions(std::vector<RoundOutcome>{solo(1), solo(2)}) == 0);
    CHECK(round_collisions(std::vector<RoundOutcome>{hit(1), hit(1)}) == 2);
    CHECK(round_collisions(std::vector<RoundOutcome>{hit(1), hit(1), hit(1), solo(2)}) == 3);
}

TEST_CASE("oracle value and population cap")
{
    RegretMeter meter({0.1, 0.9, 0.5});
    CHECK(meter.oracle_value(0) == 0.0);
    CHECK(meter.oracle_value(2) == doctest::Approx(1.4));
    CHECK_THROWS_AS((void)meter.oracle_value(4), MetricsError);
    RegretMeter relaxed({0.1, 0.9, 0.5}, true);
    CHECK(relaxed.oracle_value(5) == doctest::Approx(1.5));
}

TEST_CASE("optimal occupancy gives exactly zero regret with awkward means")
{
    const std::vector<double> means = {0.1, 0.7, 0.2, 0.3, 0.6};
    const std::vector<PlayerAction> a = {{PlayerId{0}, Action::play(5)},
                                         {PlayerId{1}, Action::play(4)},
                                         {PlayerId{2}, Action::play(2)}};
    CHECK(round_regret(a, std::vector<RoundOutcome>{solo(5), solo(4), solo(2)}, means, 3) == 0.0);
}

TEST_CASE("round regret agrees with a brute-force evaluator on random traces")
{
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = rng.uniform_int(2, 4);
        const int players = rng.uniform_int(1, std::min(3, k));
        const int horizon = rng.uniform_int(1, 20);
        std::vector<ArmModel> arms;
        std::vector<double> means;
        for (int i = 0; i < k; ++i) {
            means.push_back(rng.uniform_int(0, 16) / 16.0);
            arms.push_back({means.back(), RewardKind::bernoulli});
        }
        Environment env({arms, rng.next(), true, false, 0});
        for (int p = 0; p < players; ++p) {
            env.enter(PlayerId{p});
        }
        RegretMeter meter(means);
        for (int t = 0; t < horizon; ++t) {
            std::vector<PlayerAction> actions;
            for (int p = 0; p < players; ++p) {
                const int arm = rng.uniform_int(1, k);
                const int kind = rng.uniform_int(0, 3);
                actions.push_back({PlayerId{p}, kind == 0   ? Action::sense_play(arm)
                                                : kind == 1 ? Action::absent()
                                                            : Action::play(arm)});
            }
            const auto outcomes = env.resolve_round(actions);
            double realized = 0.0;
            int collisions = 0;
            for (std::size_t i = 0; i < actions.size(); ++i) {
                const auto& act = actions[i].action;
                int transmitters = 0;
                for (std::size_t j = 0; j < actions.size(); ++j) {
                    transmitters += outcomes[j].transmitted && actions[j].action.arm == act.arm;
                }
                if (outcomes[i].transmitted && transmitters == 1) {
                    realized += means[static_cast<std::size_t>(act.arm - 1)];
                }
                collisions += outcomes[i].transmitted && transmitters > 1;
            }
            const auto ledger = meter.evaluate(t, actions, outcomes, players);
            CHECK(ledger.regret() == doctest::Approx(brute_oracle(means, players) - realized));
            CHECK(ledger.regret() >= -1e-12);
            CHECK(ledger.collisions == collisions);
        }
    }
}

TEST_CASE("series recorder keeps stride points, the final round and monotone collisions")
{
    SeriesRecorder rec(10, 4);
    for (Round t = 0; t < 10; ++t) {
        RoundLedger l;
        l.round = t;
        l.n_active = 1;
        l.oracle_value = 1.0;
        l.realized_value = t % 2 ? 1.0 : 0.5;
        l.collisions = static_cast<int>(t % 3);
        rec.add(l);
    }
    const auto s = rec.finish();
    CHECK(s.rounds == std::vector<Round>{4, 8, 10});
    CHECK(s.final_regret == doctest::Approx(2.5));
    CHECK(std::is_sorted(s.cumulative_regret.begin(), s.cumulative_regret.end()));
    CHECK(std::is_sorted(s.cumulative_collisions.begin(), s.cumulative_collisions.end()));
    CHECK_THROWS_AS(SeriesRecorder(0, 1), MetricsError);
    CHECK_THROWS_AS(SeriesRecorder(5, 0), MetricsError);
}

TEST_CASE("aggregation statistics")
{
    RunSeries a;
    a.rounds = {1};
    a.cumulative_regret = {10};
    a.cumulative_collisions = {0};
    a.n_active = {1};
    a.final_regret = 10;
    RunSeries b = a;
    b.cumulative_regret = {20};
    b.final_regret = 20;

    const std::vector<RunSeries> two = {a, b};
    const auto agg = aggregate(two);
    CHECK(agg.mean_cum_regret[0] == 15.0);
    CHECK(agg.std_cum_regret[0] == doctest::Approx(7.0710678));
    CHECK(agg.mean_avg_regret[0] == 15.0);
    CHECK(agg.mean_final_regret == 15.0);
    CHECK(agg.repetitions == 2);

    const std::vector<RunSeries> swapped = {b, a};
    const auto agg2 = aggregate(swapped);
    CHECK(agg2.mean_cum_regret == agg.mean_cum_regret);
    CHECK(agg2.std_cum_regret == agg.std_cum_regret);

    const std::vector<RunSeries> one = {a};
    CHECK(aggregate(one).std_cum_regret[0] == 0.0);

    CHECK_THROWS_AS(aggregate(std::vector<RunSeries>{}), MetricsError);
    RunSeries c = a;
    c.rounds = {2};
    CHECK_THROWS_AS(aggregate(std::vector<RunSeries>{a, c}), MetricsError);

    const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
    CHECK(mean_std(v).mean == 2.5);
    CHECK(mean_std(v).std == doctest::Approx(std::sqrt(5.0 / 3.0)));
}
