#include "mpmab/trek_verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "mpmab/phase_math.hpp"
#include "mpmab/trekking.hpp"

namespace mpmab {
namespace {

struct Walker {
    std::variant<std::monostate, TrekUp, TrekDown> trek;  // monostate: fixed on rank 1

    ArmIndex next_arm() const
    {
        if (const auto* up = std::get_if<TrekUp>(&trek)) return up->next_arm();
        if (const auto* down = std::get_if<TrekDown>(&trek)) return down->next_arm();
        return 1;
    }
    void observe(bool collided)
    {
        if (auto* up = std::get_if<TrekUp>(&trek)) up->observe(collided);
        else if (auto* down = std::get_if<TrekDown>(&trek)) down->observe(collided);
    }
    bool locked() const
    {
        if (const auto* up = std::get_if<TrekUp>(&trek)) return up->locked();
        if (const auto* down = std::get_if<TrekDown>(&trek)) return down->locked();
        return true;
    }
};

void for_each_assignment(int arms, int players, std::vector<int>& current,
                         std::vector<bool>& used, const std::function<void()>& fn)
{
    if (static_cast<int>(current.size()) == players) {
        fn();
        return;
    }
    for (int r = 1; r <= arms; ++r) {
        if (used[static_cast<std::size_t>(r)]) {
            continue;
        }
        used[static_cast<std::size_t>(r)] = true;
        current.push_back(r);
        for_each_assignment(arms, players, current, used, fn);
        current.pop_back();
        used[static_cast<std::size_t>(r)] = false;
    }
}

std::string describe(const std::vector<int>& ranks)
{
    std::ostringstream s;
    s << '[';
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        s << (i ? "," : "") << ranks[i];
    }
    s << ']';
    return s.str();
}

}  // namespace

TrekTrace simulate_trekking(TrekVariant variant, int arms, const std::vector<int>& start_ranks,
                            Round rounds)
{
    std::vector<ArmIndex> order(static_cast<std::size_t>(arms));
    std::iota(order.begin(), order.end(), 1);

    TrekTrace trace;
    trace.start_ranks = start_ranks;
    const std::size_t n = start_ranks.size();
    std::vector<Walker> walkers(n);
    trace.arms.resize(n);
    trace.collisions.assign(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        const int r = start_ranks[p];
        if (r < 1 || r > arms) {
            throw std::invalid_argument("start rank outside [1, K]");
        }
        if (r != 1) {
            if (variant == TrekVariant::up) {
                walkers[p].trek.emplace<TrekUp>(order, r);
            } else {
                walkers[p].trek.emplace<TrekDown>(order, r);
            }
        }
        trace.arms[p].push_back(r);
    }

    std::vector<int> on_arm(static_cast<std::size_t>(arms) + 1);
    std::vector<ArmIndex> chosen(n);
    for (Round s = 1; s <= rounds; ++s) {
        std::fill(on_arm.begin(), on_arm.end(), 0);
        for (std::size_t p = 0; p < n; ++p) {
            chosen[p] = walkers[p].next_arm();
            ++on_arm[static_cast<std::size_t>(chosen[p])];
        }
        for (std::size_t p = 0; p < n; ++p) {
            const bool collided = on_arm[static_cast<std::size_t>(chosen[p])] >= 2;
            trace.collisions[p] += collided ? 1 : 0;
            walkers[p].observe(collided);
            trace.arms[p].push_back(chosen[p]);
        }
    }

    for (std::size_t p = 0; p < n; ++p) {
        trace.locked.push_back(walkers[p].locked());
        const auto& h = trace.arms[p];
        Round start = static_cast<Round>(h.size()) - 1;
        while (start > 0 && h[static_cast<std::size_t>(start - 1)] == h.back()) {
            --start;
        }
        trace.settle_round = std::max(trace.settle_round, start);
    }
    return trace;
}

std::vector<TrekCheck> verify_trekking(TrekVariant variant, int max_arms)
{
    if (max_arms < 2) {
        throw std::invalid_argument("verify_trekking needs max K >= 2");
    }
    std::vector<TrekCheck> checks;
    for (int k = 2; k <= max_arms; ++k) {
        for (int n = 1; n <= k; ++n) {
            TrekCheck check;
            check.variant = variant;
            check.arms = k;
            check.players = n;
            check.bound = variant == TrekVariant::up ? phase::t_tr_up(k, n) : phase::t_tr_down(k, n);
            // run well past the bound so late moves or collisions would show
            const Round horizon = check.bound + 2 * k + 2;

            std::vector<int> current;
            std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
            for_each_assignment(k, n, current, used, [&] {
                ++check.cases;
                const auto trace = simulate_trekking(variant, k, current, horizon);
                check.worst_settle = std::max(check.worst_settle, trace.settle_round);
                std::vector<ArmIndex> finals;
                bool all_locked = true;
                for (std::size_t p = 0; p < current.size(); ++p) {
                    finals.push_back(trace.arms[p].back());
                    all_locked = all_locked && trace.locked[p];
                    check.worst_collisions = std::max(check.worst_collisions, trace.collisions[p]);
                }
                std::sort(finals.begin(), finals.end());
                std::vector<ArmIndex> top(static_cast<std::size_t>(n));
                std::iota(top.begin(), top.end(), 1);

                std::ostringstream problem;
                if (!all_locked) {
                    problem << "not all locked";
                } else if (finals != top) {
                    problem << "final arms are not the distinct top-" << n;
                } else if (trace.settle_round > check.bound) {
                    problem << "settled in " << trace.settle_round << " > " << check.bound;
                } else if (variant == TrekVariant::up &&
                           *std::max_element(trace.collisions.begin(), trace.collisions.end()) > 2) {
                    problem << "a player collided more than twice";
                }
                if (!problem.str().empty()) {
                    check.violations.push_back("K=" + std::to_string(k) + " start " +
                                               describe(current) + ": " + problem.str());
                }
            });
            checks.push_back(std::move(check));
        }
    }
    return checks;
}

}  // namespace mpmab
