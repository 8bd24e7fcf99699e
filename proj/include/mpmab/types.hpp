#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>

namespace mpmab {

/// Global slot index. Rounds are 0-based inside the simulator; CSV output
/// reports completed-round counts (1-based).
using Round = std::int64_t;

/// Arm index in [1, K], mirroring the 1-based indexing of the algorithms.
using ArmIndex = int;

enum class PlayerId : int {};

constexpr int to_int(PlayerId id) { return static_cast<int>(id); }

inline std::ostream& operator<<(std::ostream& os, PlayerId id) { return os << to_int(id); }

enum class ActionKind { play, sense_play, sense, absent };

/// What one player does in one slot.
///
/// `play` transmits unconditionally. `sense_play` listens first and transmits
/// only if no other player is transmitting (playing) on the arm. `sense` only
/// listens. `absent` does nothing; it is also the idle action of a player
/// waiting for an epoch boundary.
struct Action {
    ActionKind kind = ActionKind::absent;
    ArmIndex arm = 0;

    static constexpr Action play(ArmIndex a) { return {ActionKind::play, a}; }
    static constexpr Action sense_play(ArmIndex a) { return {ActionKind::sense_play, a}; }
    static constexpr Action sense(ArmIndex a) { return {ActionKind::sense, a}; }
    static constexpr Action absent() { return {ActionKind::absent, 0}; }

    constexpr bool has_arm() const { return kind != ActionKind::absent; }
    constexpr bool uses_sensing() const
    {
        return kind == ActionKind::sense_play || kind == ActionKind::sense;
    }

    friend constexpr bool operator==(const Action&, const Action&) = default;
};

std::string_view to_string(ActionKind kind);
std::ostream& operator<<(std::ostream& os, const Action& a);

/// Per-player feedback for one slot.
struct RoundOutcome {
    double reward = 0.0;
    bool collided = false;     ///< eta: two or more transmitters shared the arm
    bool sensed_busy = false;  ///< only meaningful for sense / sense_play
    bool transmitted = false;
    std::optional<ArmIndex> arm;

    friend bool operator==(const RoundOutcome&, const RoundOutcome&) = default;
};

struct PlayerAction {
    PlayerId player{};
    Action action;
};

}  // namespace mpmab
