#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>

#include "mpmab/types.hpp"

namespace mpmab {

enum class Algorithm { st, dt, dts, mc, dmc };
enum class TrekVariant { up, down };
enum class EntryMode { restricted, unrestricted };

std::string_view to_string(Algorithm a);
std::string_view to_string(TrekVariant v);
std::string_view to_string(EntryMode m);
Algorithm parse_algorithm(std::string_view text);
TrekVariant parse_trek_variant(std::string_view text);
EntryMode parse_entry_mode(std::string_view text);

/// Maps (learning-phase collisions, learning length, K) to a player-count
/// estimate in [1, K].
using PlayerEstimator = std::function<int(std::int64_t, Round, int)>;

/// Everything a policy needs besides its identity and seed. Durations are
/// already resolved (formula or override) by the scenario layer.
struct PolicyParams {
    int arms = 0;
    TrekVariant trek = TrekVariant::up;
    EntryMode entry = EntryMode::restricted;
    Round learning_rounds = 0;     ///< T0 for st/dt
    Round epoch_length = 0;        ///< T_ep for dt
    Round mc_learning_rounds = 0;  ///< T0MC for mc/dmc
    Round mc_epoch_length = 0;     ///< T_ep for dmc
    Round dts_learning_rounds = 0; ///< learning length of dts
    Round lock_rounds = 0;         ///< T_l for dts
    Round estimate_threshold = 1;  ///< samples needed for a dts arm estimate
    PlayerEstimator estimator;     ///< empty means the default musical-chairs estimator
};

/// Per-player decision rule with a two-call protocol: `act` for round t, then
/// `feedback` with that round's outcome.
class Policy {
public:
    explicit Policy(PlayerId id) : id_(id) {}
    virtual ~Policy() = default;

    Policy(const Policy&) = delete;
    Policy& operator=(const Policy&) = delete;

    PlayerId id() const { return id_; }

    Action act(Round t);
    void feedback(const RoundOutcome& outcome);

    /// Marks the player as gone; further calls to act throw.
    void leave() { departed_ = true; }
    bool departed() const { return departed_; }

    virtual std::string_view name() const = 0;
    /// Whether the player currently sits on a fixed arm (absorbing for
    /// st/mc, renewable for dts).
    virtual bool locked() const = 0;
    virtual std::optional<ArmIndex> locked_arm() const { return std::nullopt; }

protected:
    virtual Action choose(Round t) = 0;
    virtual void update(const Action& action, const RoundOutcome& outcome) = 0;

private:
    PlayerId id_;
    bool departed_ = false;
    bool pending_ = false;
    Action last_{};
};

/// Builds the policy for `algorithm`. `join_round` is the global round of
/// entry; `seed` drives all of the player's private randomness.
std::unique_ptr<Policy> make_policy(Algorithm algorithm, const PolicyParams& params, PlayerId id,
                                    Round join_round, std::uint64_t seed);

}  // namespace mpmab
