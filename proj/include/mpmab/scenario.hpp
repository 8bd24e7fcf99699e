#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpmab/env.hpp"
#include "mpmab/policy.hpp"

namespace mpmab {

/// Invalid or inconsistent scenario configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One scheduled entry or exit as written in a config. Entering players get
/// fresh ids in schedule order after the initial players 0..N0-1.
struct EventSpec {
    Round round = 0;
    EventKind kind = EventKind::enter;
    std::optional<int> target;  ///< leave only; empty = random active player

    friend bool operator==(const EventSpec&, const EventSpec&) = default;
};

/// Alternating leave/enter generator: an event every `interval` rounds (or
/// floor(T^exponent) rounds), starting with `first`.
struct AlternatingGenerator {
    std::optional<Round> interval;
    std::optional<double> exponent;
    EventKind first = EventKind::leave;

    friend bool operator==(const AlternatingGenerator&, const AlternatingGenerator&) = default;
};

struct Overrides {
    std::optional<Round> t0;
    std::optional<Round> t0_mc;
    std::optional<Round> t_ep;
    std::optional<Round> t_l;
    std::optional<Round> c_m;
    std::optional<double> churn;

    friend bool operator==(const Overrides&, const Overrides&) = default;
};

struct ScenarioSpec {
    std::string name = "scenario";
    int arms = 0;
    std::vector<double> means;
    Round horizon = 0;
    Algorithm algorithm = Algorithm::st;
    TrekVariant trek = TrekVariant::up;
    double epsilon = 0.1;
    double delta = 0.1;
    int repetitions = 1;
    std::uint64_t base_seed = 1;
    EntryMode entry = EntryMode::restricted;
    RewardKind reward = RewardKind::bernoulli;
    bool relaxed_population = false;
    Round output_stride = 0;  ///< 0 = automatic (about 10^4 points)

    Overrides overrides;

    int initial_players = 1;
    std::vector<EventSpec> events;
    std::optional<AlternatingGenerator> generator;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Phase lengths actually used by a run, after formulas and overrides.
struct PhaseConstants {
    double churn = 0.0;          ///< x
    Round t0 = 0;                ///< st/dt learning
    Round t_tr = 0;              ///< trekking length entering the epoch formula
    Round t_ep = 0;              ///< dt epoch
    Round t0_mc = 0;             ///< mc/dmc learning
    Round t_ep_mc = 0;           ///< dmc epoch
    Round t0_dts = 0;            ///< dts learning
    Round t_l = 0;               ///< dts lock period
    Round trek_cycle = 0;        ///< dts excursion bound
    Round estimate_threshold = 0;///< dts samples for an arm estimate

    friend bool operator==(const PhaseConstants&, const PhaseConstants&) = default;
};

/// Parses an INI scenario file. `assignments` are "section.key=value" strings
/// applied on top of the file before validation.
ScenarioSpec load_scenario(const std::filesystem::path& path,
                           const std::vector<std::string>& assignments = {});
ScenarioSpec parse_scenario(const std::string& ini_text,
                            const std::vector<std::string>& assignments = {});

/// Serializes back to INI; parse_scenario(to_ini(s)) == s.
std::string to_ini(const ScenarioSpec& spec);

/// Throws ConfigError on any inconsistency, including a schedule that would
/// exceed K active players or remove a player who is not active.
void validate(const ScenarioSpec& spec);

/// Full event list (explicit events merged with the generator), sorted by
/// round, with concrete player ids for entries.
std::vector<PopulationEvent> expand_events(const ScenarioSpec& spec);

/// Churn bound x: the override, else the number of scheduled events.
double churn_bound(const ScenarioSpec& spec);

PhaseConstants resolve_phase_constants(const ScenarioSpec& spec);

PolicyParams policy_params(const ScenarioSpec& spec, const PhaseConstants& constants);

Round effective_stride(const ScenarioSpec& spec);

std::vector<double> parse_means(const std::string& text);

}  // namespace mpmab
