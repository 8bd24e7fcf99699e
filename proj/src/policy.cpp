#include "mpmab/policy.hpp"

#include <sstream>
#include <stdexcept>

#include "mpmab/musical_chairs.hpp"
#include "mpmab/sensing_trekking.hpp"
#include "mpmab/static_trekking.hpp"

namespace mpmab {

std::string_view to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::st: return "st";
    case Algorithm::dt: return "dt";
    case Algorithm::dts: return "dts";
    case Algorithm::mc: return "mc";
    case Algorithm::dmc: return "dmc";
    }
    return "?";
}

std::string_view to_string(TrekVariant v) { return v == TrekVariant::up ? "up" : "down"; }

std::string_view to_string(EntryMode m)
{
    return m == EntryMode::restricted ? "restricted" : "unrestricted";
}

Algorithm parse_algorithm(std::string_view text)
{
    for (auto a : {Algorithm::st, Algorithm::dt, Algorithm::dts, Algorithm::mc, Algorithm::dmc}) {
        if (text == to_string(a)) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm: " + std::string(text));
}

TrekVariant parse_trek_variant(std::string_view text)
{
    if (text == "up") {
        return TrekVariant::up;
    }
    if (text == "down") {
        return TrekVariant::down;
    }
    throw std::invalid_argument("unknown trek variant: " + std::string(text));
}

EntryMode parse_entry_mode(std::string_view text)
{
    if (text == "restricted") {
        return EntryMode::restricted;
    }
    if (text == "unrestricted") {
        return EntryMode::unrestricted;
    }
    throw std::invalid_argument("unknown entry mode: " + std::string(text));
}

Action Policy::act(Round t)
{
    if (departed_) {
        std::ostringstream msg;
        msg << "player " << id_ << " asked to act after leaving";
        throw std::logic_error(msg.str());
    }
    if (pending_) {
        throw std::logic_error("act called twice without feedback");
    }
    last_ = choose(t);
    pending_ = true;
    return last_;
}

void Policy::feedback(const RoundOutcome& outcome)
{
    if (!pending_) {
        throw std::logic_error("feedback without a pending action");
    }
    const std::optional<ArmIndex> expected =
        last_.has_arm() ? std::optional<ArmIndex>(last_.arm) : std::nullopt;
    if (outcome.arm != expected) {
        throw std::logic_error("feedback arm does not match the last action");
    }
    pending_ = false;
    update(last_, outcome);
}

std::unique_ptr<Policy> make_policy(Algorithm algorithm, const PolicyParams& params, PlayerId id,
                                    Round join_round, std::uint64_t seed)
{
    switch (algorithm) {
    case Algorithm::st:
        return std::make_unique<StaticTrekking>(id, params.arms, params.learning_rounds,
                                                params.trek, seed);
    case Algorithm::dt:
        return std::make_unique<DynamicTrekking>(id, params, join_round, seed);
    case Algorithm::dts:
        return std::make_unique<SensingTrekking>(id, params, seed);
    case Algorithm::mc:
        return std::make_unique<MusicalChairs>(id, params.arms, params.mc_learning_rounds,
                                               params.estimator, seed);
    case Algorithm::dmc:
        return std::make_unique<DynamicMusicalChairs>(id, params, join_round, seed);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace mpmab
