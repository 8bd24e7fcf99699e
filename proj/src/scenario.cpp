#include "mpmab/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mpmab/phase_math.hpp"

namespace mpmab {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys = {
        {"scenario",
         {"name", "K", "means", "T", "algorithm", "trek_variant", "epsilon", "delta",
          "repetitions", "base_seed", "entry_mode", "reward", "relaxed_population",
          "output_stride"}},
        {"overrides", {"T0", "T0MC", "T_ep", "T_l", "C_m", "churn"}},
        {"population", {"initial", "events", "generator", "interval", "interval_exponent", "first"}},
    };
    return keys;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& what)
{
    const std::string s = trim(text);
    T value{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError(what + ": cannot parse '" + s + "' as a number");
    }
    return value;
}

bool parse_bool(const std::string& text, const std::string& what)
{
    const std::string s = trim(text);
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw ConfigError(what + ": expected a boolean, got '" + s + "'");
}

template <typename Fn>
auto wrap(const std::string& what, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string kind_name(EventKind k) { return k == EventKind::enter ? "enter" : "leave"; }

EventKind parse_kind(const std::string& s)
{
    if (s == "enter") {
        return EventKind::enter;
    }
    if (s == "leave") {
        return EventKind::leave;
    }
    throw ConfigError("population event kind must be enter or leave, got '" + s + "'");
}

std::vector<EventSpec> parse_events(const std::string& text)
{
    std::vector<EventSpec> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const auto& token : split(text, ',')) {
        const auto at = token.find('@');
        if (at == std::string::npos) {
            throw ConfigError("population event '" + token + "' is not of the form kind@round");
        }
        EventSpec ev;
        ev.kind = parse_kind(trim(token.substr(0, at)));
        std::string rest = token.substr(at + 1);
        const auto hash = rest.find('#');
        if (hash != std::string::npos) {
            if (ev.kind == EventKind::enter) {
                throw ConfigError("enter events take fresh ids; '#id' is only valid for leave");
            }
            ev.target = parse_number<int>(rest.substr(hash + 1), "population.events id");
            rest = rest.substr(0, hash);
        }
        ev.round = parse_number<Round>(rest, "population.events round");
        out.push_back(ev);
    }
    return out;
}

std::string format_events(const std::vector<EventSpec>& events)
{
    std::string out;
    for (const auto& ev : events) {
        if (!out.empty()) {
            out += ", ";
        }
        out += kind_name(ev.kind) + "@" + std::to_string(ev.round);
        if (ev.target) {
            out += "#" + std::to_string(*ev.target);
        }
    }
    return out;
}

ScenarioSpec from_tree(const pt::ptree& tree)
{
    for (const auto& [section, body] : tree) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end()) {
            throw ConfigError("unknown config section [" + section + "]");
        }
        for (const auto& [key, value] : body) {
            (void)value;
            if (!it->second.contains(key)) {
                throw ConfigError("unknown config key " + section + "." + key);
            }
        }
    }

    auto get = [&](const std::string& path) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
            return trim(*v);
        }
        return std::nullopt;
    };

    ScenarioSpec spec;
    if (auto v = get("scenario.name")) spec.name = *v;
    if (auto v = get("scenario.means")) spec.means = parse_means(*v);
    if (auto v = get("scenario.K")) {
        spec.arms = parse_number<int>(*v, "scenario.K");
    } else {
        spec.arms = static_cast<int>(spec.means.size());
    }
    if (auto v = get("scenario.T")) spec.horizon = parse_number<Round>(*v, "scenario.T");
    if (auto v = get("scenario.algorithm")) {
        spec.algorithm = wrap("scenario.algorithm", [&] { return parse_algorithm(*v); });
    }
    if (auto v = get("scenario.trek_variant")) {
        spec.trek = wrap("scenario.trek_variant", [&] { return parse_trek_variant(*v); });
    }
    if (auto v = get("scenario.epsilon")) spec.epsilon = parse_number<double>(*v, "scenario.epsilon");
    if (auto v = get("scenario.delta")) spec.delta = parse_number<double>(*v, "scenario.delta");
    if (auto v = get("scenario.repetitions")) {
        spec.repetitions = parse_number<int>(*v, "scenario.repetitions");
    }
    if (auto v = get("scenario.base_seed")) {
        spec.base_seed = parse_number<std::uint64_t>(*v, "scenario.base_seed");
    }
    if (auto v = get("scenario.entry_mode")) {
        spec.entry = wrap("scenario.entry_mode", [&] { return parse_entry_mode(*v); });
    }
    if (auto v = get("scenario.reward")) {
        spec.reward = wrap("scenario.reward", [&] { return parse_reward_kind(*v); });
    }
    if (auto v = get("scenario.relaxed_population")) {
        spec.relaxed_population = parse_bool(*v, "scenario.relaxed_population");
    }
    if (auto v = get("scenario.output_stride")) {
        spec.output_stride = parse_number<Round>(*v, "scenario.output_stride");
    }

    auto& o = spec.overrides;
    if (auto v = get("overrides.T0")) o.t0 = parse_number<Round>(*v, "overrides.T0");
    if (auto v = get("overrides.T0MC")) o.t0_mc = parse_number<Round>(*v, "overrides.T0MC");
    if (auto v = get("overrides.T_ep")) o.t_ep = parse_number<Round>(*v, "overrides.T_ep");
    if (auto v = get("overrides.T_l")) o.t_l = parse_number<Round>(*v, "overrides.T_l");
    if (auto v = get("overrides.C_m")) o.c_m = parse_number<Round>(*v, "overrides.C_m");
    if (auto v = get("overrides.churn")) o.churn = parse_number<double>(*v, "overrides.churn");

    if (auto v = get("population.initial")) {
        spec.initial_players = parse_number<int>(*v, "population.initial");
    }
    if (auto v = get("population.events")) spec.events = parse_events(*v);
    if (auto v = get("population.generator")) {
        if (*v != "alternate") {
            throw ConfigError("population.generator: only 'alternate' is supported");
        }
        AlternatingGenerator gen;
        if (auto i = get("population.interval")) {
            gen.interval = parse_number<Round>(*i, "population.interval");
        }
        if (auto e = get("population.interval_exponent")) {
            gen.exponent = parse_number<double>(*e, "population.interval_exponent");
        }
        if (auto f = get("population.first")) {
            gen.first = parse_kind(*f);
        }
        if (gen.interval.has_value() == gen.exponent.has_value()) {
            throw ConfigError("alternate generator needs exactly one of interval, interval_exponent");
        }
        spec.generator = gen;
    } else if (get("population.interval") || get("population.interval_exponent") ||
               get("population.first")) {
        throw ConfigError("population.interval/first given without population.generator");
    }

    validate(spec);
    return spec;
}

void apply_assignments(pt::ptree& tree, const std::vector<std::string>& assignments)
{
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        const auto dot = a.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
            throw ConfigError("override '" + a + "' is not of the form section.key=value");
        }
        tree.put(pt::ptree::path_type(trim(a.substr(0, eq)), '.'), trim(a.substr(eq + 1)));
    }
}

Round generator_interval(const ScenarioSpec& spec)
{
    const auto& gen = *spec.generator;
    if (gen.interval) {
        return *gen.interval;
    }
    return static_cast<Round>(std::floor(std::pow(static_cast<double>(spec.horizon), *gen.exponent)));
}

}  // namespace

std::vector<double> parse_means(const std::string& text)
{
    std::vector<double> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const auto& token : split(text, ',')) {
        out.push_back(parse_number<double>(token, "scenario.means"));
    }
    return out;
}

ScenarioSpec parse_scenario(const std::string& ini_text, const std::vector<std::string>& assignments)
{
    pt::ptree tree;
    std::istringstream in(ini_text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    apply_assignments(tree, assignments);
    return from_tree(tree);
}

ScenarioSpec load_scenario(const std::filesystem::path& path, const std::vector<std::string>& assignments)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str(), assignments);
}

std::string to_ini(const ScenarioSpec& spec)
{
    std::ostringstream out;
    out << "[scenario]\n";
    out << "name = " << spec.name << "\n";
    out << "K = " << spec.arms << "\n";
    out << "means = ";
    for (std::size_t i = 0; i < spec.means.size(); ++i) {
        out << (i ? ", " : "") << format_double(spec.means[i]);
    }
    out << "\n";
    out << "T = " << spec.horizon << "\n";
    out << "algorithm = " << to_string(spec.algorithm) << "\n";
    out << "trek_variant = " << to_string(spec.trek) << "\n";
    out << "epsilon = " << format_double(spec.epsilon) << "\n";
    out << "delta = " << format_double(spec.delta) << "\n";
    out << "repetitions = " << spec.repetitions << "\n";
    out << "base_seed = " << spec.base_seed << "\n";
    out << "entry_mode = " << to_string(spec.entry) << "\n";
    out << "reward = " << to_string(spec.reward) << "\n";
    out << "relaxed_population = " << (spec.relaxed_population ? "true" : "false") << "\n";
    out << "output_stride = " << spec.output_stride << "\n";

    const auto& o = spec.overrides;
    out << "\n[overrides]\n";
    if (o.t0) out << "T0 = " << *o.t0 << "\n";
    if (o.t0_mc) out << "T0MC = " << *o.t0_mc << "\n";
    if (o.t_ep) out << "T_ep = " << *o.t_ep << "\n";
    if (o.t_l) out << "T_l = " << *o.t_l << "\n";
    if (o.c_m) out << "C_m = " << *o.c_m << "\n";
    if (o.churn) out << "churn = " << format_double(*o.churn) << "\n";

    out << "\n[population]\n";
    out << "initial = " << spec.initial_players << "\n";
    if (!spec.events.empty()) {
        out << "events = " << format_events(spec.events) << "\n";
    }
    if (spec.generator) {
        out << "generator = alternate\n";
        if (spec.generator->interval) out << "interval = " << *spec.generator->interval << "\n";
        if (spec.generator->exponent) {
            out << "interval_exponent = " << format_double(*spec.generator->exponent) << "\n";
        }
        out << "first = " << kind_name(spec.generator->first) << "\n";
    }
    return out.str();
}

void validate(const ScenarioSpec& spec)
{
    if (spec.arms < 2) {
        throw ConfigError("K must be at least 2");
    }
    if (static_cast<int>(spec.means.size()) != spec.arms) {
        throw ConfigError("means has " + std::to_string(spec.means.size()) + " entries, K is " +
                          std::to_string(spec.arms));
    }
    for (double m : spec.means) {
        if (!(m >= 0.0 && m <= 1.0)) {
            throw ConfigError("arm means must lie in [0,1]");
        }
    }
    if (spec.horizon < 1) {
        throw ConfigError("T must be positive");
    }
    if (spec.repetitions < 1) {
        throw ConfigError("repetitions must be positive");
    }
    if (!(spec.epsilon > 0.0)) {
        throw ConfigError("epsilon must be positive");
    }
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
        throw ConfigError("delta must lie in (0,1)");
    }
    if (spec.output_stride < 0) {
        throw ConfigError("output_stride must be non-negative");
    }
    if (spec.initial_players < 0) {
        throw ConfigError("initial player count must be non-negative");
    }
    if (!spec.relaxed_population && spec.initial_players > spec.arms) {
        throw ConfigError("initial player count exceeds K outside relaxed-population mode");
    }
    const auto& o = spec.overrides;
    for (const auto& [value, name] : {std::pair{o.t0, "T0"}, std::pair{o.t0_mc, "T0MC"},
                                      std::pair{o.t_ep, "T_ep"}, std::pair{o.t_l, "T_l"},
                                      std::pair{o.c_m, "C_m"}}) {
        if (value && *value < 1) {
            throw ConfigError(std::string("override ") + name + " must be positive");
        }
    }
    if (o.churn && !(*o.churn >= 0.0)) {
        throw ConfigError("override churn must be non-negative");
    }
    for (const auto& ev : spec.events) {
        if (ev.round < 1 || ev.round >= spec.horizon) {
            throw ConfigError("population event round " + std::to_string(ev.round) +
                              " outside [1, T)");
        }
    }
    if (spec.generator) {
        const auto& g = *spec.generator;
        if (g.exponent && !(*g.exponent > 0.0 && *g.exponent < 1.0)) {
            throw ConfigError("interval_exponent must lie in (0,1)");
        }
        if (generator_interval(spec) < 1) {
            throw ConfigError("generator interval must be at least 1 round");
        }
    }

    // replay the schedule on counts and known ids
    std::set<int> active;
    for (int i = 0; i < spec.initial_players; ++i) {
        active.insert(i);
    }
    int next_id = spec.initial_players;
    std::size_t count = active.size();
    std::set<int> ever;
    for (int i = 0; i < next_id; ++i) {
        ever.insert(i);
    }
    for (const auto& ev : expand_events(spec)) {
        if (ev.kind == EventKind::enter) {
            ++count;
            ever.insert(next_id);
            active.insert(next_id++);
            if (!spec.relaxed_population && count > static_cast<std::size_t>(spec.arms)) {
                throw ConfigError("schedule exceeds K active players at round " +
                                  std::to_string(ev.round));
            }
        } else {
            if (count == 0) {
                throw ConfigError("schedule removes a player when none is active at round " +
                                  std::to_string(ev.round));
            }
            --count;
            if (ev.target) {
                const int id = to_int(*ev.target);
                if (!ever.contains(id) || !active.contains(id)) {
                    throw ConfigError("schedule removes player " + std::to_string(id) +
                                      " who is not active at round " + std::to_string(ev.round));
                }
                active.erase(id);
            }
        }
    }
}

std::vector<PopulationEvent> expand_events(const ScenarioSpec& spec)
{
    std::vector<EventSpec> all = spec.events;
    if (spec.generator) {
        const Round interval = generator_interval(spec);
        EventKind kind = spec.generator->first;
        for (Round r = interval; interval >= 1 && r < spec.horizon; r += interval) {
            all.push_back({r, kind, std::nullopt});
            kind = kind == EventKind::enter ? EventKind::leave : EventKind::enter;
        }
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const EventSpec& a, const EventSpec& b) { return a.round < b.round; });

    std::vector<PopulationEvent> out;
    out.reserve(all.size());
    int next_id = spec.initial_players;
    for (const auto& ev : all) {
        if (ev.kind == EventKind::enter) {
            out.push_back(PopulationEvent::enter(ev.round, PlayerId{next_id++}));
        } else if (ev.target) {
            out.push_back(PopulationEvent::leave(ev.round, PlayerId{*ev.target}));
        } else {
            out.push_back(PopulationEvent::leave_random(ev.round));
        }
    }
    return out;
}

double churn_bound(const ScenarioSpec& spec)
{
    if (spec.overrides.churn) {
        return *spec.overrides.churn;
    }
    return static_cast<double>(expand_events(spec).size());
}

PhaseConstants resolve_phase_constants(const ScenarioSpec& spec)
{
    try {
        const auto& o = spec.overrides;
        const int k = spec.arms;
        PhaseConstants c;
        c.churn = churn_bound(spec);
        const double x = std::max(c.churn, 1.0);
        c.t0 = o.t0 ? *o.t0 : phase::t0_st(k, spec.epsilon, spec.delta);
        c.t_tr = spec.trek == TrekVariant::up ? phase::t_tr_up(k, 1) : phase::t_tr_down(k, k);
        c.t_ep = o.t_ep ? *o.t_ep : phase::t_ep(spec.horizon, k, c.t0, c.t_tr, x);
        c.t0_mc = o.t0_mc ? *o.t0_mc : phase::t0_mc(k, spec.epsilon, spec.delta);
        c.t_ep_mc = o.t_ep ? *o.t_ep : phase::t_ep(spec.horizon, k, c.t0_mc, 0, x);
        c.t0_dts = o.t0 ? *o.t0 : phase::t0_dts(k, c.churn, spec.epsilon, spec.delta);
        c.trek_cycle = phase::t_trek_cycle(k);
        c.t_l = o.t_l ? *o.t_l : phase::t_l(spec.horizon, k, x);
        if (o.c_m) {
            c.estimate_threshold = *o.c_m;
        } else {
            // samples per arm that sequential hopping delivers once random
            // hopping (confidence delta / (2(K+x))) is over
            const double population = k + c.churn;
            const Round hopping = phase::t_rh(k, k * spec.delta / (2.0 * population));
            const Round sequential = std::max<Round>(c.t0_dts - hopping, 0);
            c.estimate_threshold = std::max<Round>(1, sequential / k);
        }
        return c;
    } catch (const phase::DomainError& e) {
        throw ConfigError(std::string("phase constants: ") + e.what());
    }
}

PolicyParams policy_params(const ScenarioSpec& spec, const PhaseConstants& c)
{
    PolicyParams p;
    p.arms = spec.arms;
    p.trek = spec.trek;
    p.entry = spec.entry;
    p.learning_rounds = c.t0;
    p.epoch_length = c.t_ep;
    p.mc_learning_rounds = c.t0_mc;
    p.mc_epoch_length = c.t_ep_mc;
    p.dts_learning_rounds = c.t0_dts;
    p.lock_rounds = c.t_l;
    p.estimate_threshold = c.estimate_threshold;
    return p;
}

Round effective_stride(const ScenarioSpec& spec)
{
    if (spec.output_stride > 0) {
        return spec.output_stride;
    }
    return std::max<Round>(1, (spec.horizon + 9999) / 10000);
}

}  // namespace mpmab
