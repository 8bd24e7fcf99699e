#include "mpmab/output.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mpmab {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

OutputFormat parse_output_format(std::string_view text)
{
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    throw std::invalid_argument("unknown output format: " + std::string(text));
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

RunSummary summarize(const ScenarioResult& result)
{
    RunSummary s;
    s.spec = result.spec;
    s.constants = result.constants;
    s.seeds = result.seeds;
    s.repetitions = result.aggregate.repetitions;
    s.mean_final_regret = result.aggregate.mean_final_regret;
    s.std_final_regret = result.aggregate.std_final_regret;
    s.mean_final_collisions = result.aggregate.mean_final_collisions;
    s.std_final_collisions = result.aggregate.std_final_collisions;
    for (const auto& run : result.runs) {
        s.final_regret.push_back(run.final_regret);
        s.final_collisions.push_back(run.final_collisions);
    }
    return s;
}

json to_json(const ScenarioSpec& spec)
{
    json events = json::array();
    for (const auto& ev : spec.events) {
        events.push_back({{"round", ev.round},
                          {"kind", ev.kind == EventKind::enter ? "enter" : "leave"},
                          {"target", optional_json(ev.target)}});
    }
    json generator = nullptr;
    if (spec.generator) {
        generator = {{"interval", optional_json(spec.generator->interval)},
                     {"interval_exponent", optional_json(spec.generator->exponent)},
                     {"first", spec.generator->first == EventKind::enter ? "enter" : "leave"}};
    }
    const auto& o = spec.overrides;
    return {
        {"name", spec.name},
        {"K", spec.arms},
        {"means", spec.means},
        {"T", spec.horizon},
        {"algorithm", std::string(to_string(spec.algorithm))},
        {"trek_variant", std::string(to_string(spec.trek))},
        {"epsilon", spec.epsilon},
        {"delta", spec.delta},
        {"repetitions", spec.repetitions},
        {"base_seed", spec.base_seed},
        {"entry_mode", std::string(to_string(spec.entry))},
        {"reward", std::string(to_string(spec.reward))},
        {"relaxed_population", spec.relaxed_population},
        {"output_stride", spec.output_stride},
        {"overrides",
         {{"T0", optional_json(o.t0)},
          {"T0MC", optional_json(o.t0_mc)},
          {"T_ep", optional_json(o.t_ep)},
          {"T_l", optional_json(o.t_l)},
          {"C_m", optional_json(o.c_m)},
          {"churn", optional_json(o.churn)}}},
        {"population",
         {{"initial", spec.initial_players}, {"events", events}, {"generator", generator}}},
    };
}

ScenarioSpec spec_from_json(const json& j)
{
    ScenarioSpec s;
    s.name = j.at("name").get<std::string>();
    s.arms = j.at("K").get<int>();
    s.means = j.at("means").get<std::vector<double>>();
    s.horizon = j.at("T").get<Round>();
    s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    s.trek = parse_trek_variant(j.at("trek_variant").get<std::string>());
    s.epsilon = j.at("epsilon").get<double>();
    s.delta = j.at("delta").get<double>();
    s.repetitions = j.at("repetitions").get<int>();
    s.base_seed = j.at("base_seed").get<std::uint64_t>();
    s.entry = parse_entry_mode(j.at("entry_mode").get<std::string>());
    s.reward = parse_reward_kind(j.at("reward").get<std::string>());
    s.relaxed_population = j.at("relaxed_population").get<bool>();
    s.output_stride = j.at("output_stride").get<Round>();
    const auto& o = j.at("overrides");
    s.overrides.t0 = optional_from<Round>(o, "T0");
    s.overrides.t0_mc = optional_from<Round>(o, "T0MC");
    s.overrides.t_ep = optional_from<Round>(o, "T_ep");
    s.overrides.t_l = optional_from<Round>(o, "T_l");
    s.overrides.c_m = optional_from<Round>(o, "C_m");
    s.overrides.churn = optional_from<double>(o, "churn");
    const auto& p = j.at("population");
    s.initial_players = p.at("initial").get<int>();
    for (const auto& ev : p.at("events")) {
        EventSpec e;
        e.round = ev.at("round").get<Round>();
        e.kind = ev.at("kind").get<std::string>() == "enter" ? EventKind::enter : EventKind::leave;
        e.target = optional_from<int>(ev, "target");
        s.events.push_back(e);
    }
    if (!p.at("generator").is_null()) {
        const auto& g = p.at("generator");
        AlternatingGenerator gen;
        gen.interval = optional_from<Round>(g, "interval");
        gen.exponent = optional_from<double>(g, "interval_exponent");
        gen.first = g.at("first").get<std::string>() == "enter" ? EventKind::enter : EventKind::leave;
        s.generator = gen;
    }
    return s;
}

json to_json(const PhaseConstants& c)
{
    return {{"churn", c.churn},
            {"T0", c.t0},
            {"T_tr", c.t_tr},
            {"T_ep", c.t_ep},
            {"T0MC", c.t0_mc},
            {"T_ep_mc", c.t_ep_mc},
            {"T0_dts", c.t0_dts},
            {"T_l", c.t_l},
            {"trek_cycle", c.trek_cycle},
            {"estimate_threshold", c.estimate_threshold}};
}

PhaseConstants constants_from_json(const json& j)
{
    PhaseConstants c;
    c.churn = j.at("churn").get<double>();
    c.t0 = j.at("T0").get<Round>();
    c.t_tr = j.at("T_tr").get<Round>();
    c.t_ep = j.at("T_ep").get<Round>();
    c.t0_mc = j.at("T0MC").get<Round>();
    c.t_ep_mc = j.at("T_ep_mc").get<Round>();
    c.t0_dts = j.at("T0_dts").get<Round>();
    c.t_l = j.at("T_l").get<Round>();
    c.trek_cycle = j.at("trek_cycle").get<Round>();
    c.estimate_threshold = j.at("estimate_threshold").get<Round>();
    return c;
}

json to_json(const RunSummary& s)
{
    return {{"spec", to_json(s.spec)},
            {"phase_constants", to_json(s.constants)},
            {"seeds", s.seeds},
            {"repetitions", s.repetitions},
            {"final",
             {{"mean_cum_regret", s.mean_final_regret},
              {"std_cum_regret", s.std_final_regret},
              {"mean_cum_collisions", s.mean_final_collisions},
              {"std_cum_collisions", s.std_final_collisions}}},
            {"per_repetition",
             {{"cum_regret", s.final_regret}, {"cum_collisions", s.final_collisions}}}};
}

RunSummary summary_from_json(const json& j)
{
    RunSummary s;
    s.spec = spec_from_json(j.at("spec"));
    s.constants = constants_from_json(j.at("phase_constants"));
    s.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    s.repetitions = j.at("repetitions").get<std::size_t>();
    const auto& f = j.at("final");
    s.mean_final_regret = f.at("mean_cum_regret").get<double>();
    s.std_final_regret = f.at("std_cum_regret").get<double>();
    s.mean_final_collisions = f.at("mean_cum_collisions").get<double>();
    s.std_final_collisions = f.at("std_cum_collisions").get<double>();
    const auto& p = j.at("per_repetition");
    s.final_regret = p.at("cum_regret").get<std::vector<double>>();
    s.final_collisions = p.at("cum_collisions").get<std::vector<double>>();
    return s;
}

void write_series_csv(std::ostream& out, const AggregateSeries& agg)
{
    out << "round,mean_cum_regret,std_cum_regret,mean_avg_regret,mean_cum_collisions,"
           "std_cum_collisions,n_active\n";
    for (std::size_t i = 0; i < agg.size(); ++i) {
        out << agg.rounds[i] << ',' << format_number(agg.mean_cum_regret[i]) << ','
            << format_number(agg.std_cum_regret[i]) << ',' << format_number(agg.mean_avg_regret[i])
            << ',' << format_number(agg.mean_cum_collisions[i]) << ','
            << format_number(agg.std_cum_collisions[i]) << ',' << format_number(agg.n_active[i])
            << '\n';
    }
}

void write_run_csv(std::ostream& out, const RunSeries& run)
{
    out << "round,cum_regret,cum_collisions,n_active\n";
    for (std::size_t i = 0; i < run.size(); ++i) {
        out << run.rounds[i] << ',' << format_number(run.cumulative_regret[i]) << ','
            << format_number(run.cumulative_collisions[i]) << ',' << run.n_active[i] << '\n';
    }
}

std::vector<std::filesystem::path> emit_outputs(const ScenarioResult& result,
                                                const std::filesystem::path& dir,
                                                const EmitOptions& options)
{
    if (result.runs.empty() || result.aggregate.repetitions == 0 || result.aggregate.size() == 0) {
        throw std::runtime_error("no results to write for scenario '" + result.spec.name + "'");
    }
    std::filesystem::create_directories(dir);
    const std::string stem = result.spec.name;
    std::vector<std::filesystem::path> written;

    const json summary = to_json(summarize(result));
    if (options.format == OutputFormat::csv) {
        std::ostringstream csv;
        write_series_csv(csv, result.aggregate);
        written.push_back(dir / (stem + ".csv"));
        write_file(written.back(), csv.str());
    } else {
        const auto& a = result.aggregate;
        json doc = {{"summary", summary},
                    {"series",
                     {{"round", a.rounds},
                      {"mean_cum_regret", a.mean_cum_regret},
                      {"std_cum_regret", a.std_cum_regret},
                      {"mean_avg_regret", a.mean_avg_regret},
                      {"mean_cum_collisions", a.mean_cum_collisions},
                      {"std_cum_collisions", a.std_cum_collisions},
                      {"n_active", a.n_active}}}};
        written.push_back(dir / (stem + ".json"));
        write_file(written.back(), doc.dump(2) + "\n");
    }
    written.push_back(dir / (stem + ".summary.json"));
    write_file(written.back(), summary.dump(2) + "\n");

    if (options.raw) {
        const auto raw_dir = dir / (stem + "_raw");
        std::filesystem::create_directories(raw_dir);
        for (std::size_t i = 0; i < result.runs.size(); ++i) {
            std::ostringstream csv;
            write_run_csv(csv, result.runs[i]);
            written.push_back(raw_dir / ("rep" + std::to_string(i) + ".csv"));
            write_file(written.back(), csv.str());
        }
    }
    return written;
}

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows)
{
    out << std::left << std::setw(24) << "scenario" << std::setw(6) << "alg" << std::right
        << std::setw(6) << "reps" << std::setw(16) << "final_regret" << std::setw(14) << "std"
        << std::setw(16) << "collisions" << std::setw(14) << "std" << '\n';
    out << std::fixed << std::setprecision(2);
    for (const auto& r : rows) {
        out << std::left << std::setw(24) << r.name << std::setw(6) << to_string(r.algorithm)
            << std::right << std::setw(6) << r.repetitions << std::setw(16) << r.mean_final_regret
            << std::setw(14) << r.std_final_regret << std::setw(16) << r.mean_final_collisions
            << std::setw(14) << r.std_final_collisions << '\n';
    }
    out << std::defaultfloat;
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows)
{
    out << "scenario,algorithm,repetitions,mean_final_regret,std_final_regret,"
           "mean_final_collisions,std_final_collisions\n";
    for (const auto& r : rows) {
        out << r.name << ',' << to_string(r.algorithm) << ',' << r.repetitions << ','
            << format_number(r.mean_final_regret) << ',' << format_number(r.std_final_regret) << ','
            << format_number(r.mean_final_collisions) << ','
            << format_number(r.std_final_collisions) << '\n';
    }
}

}  // namespace mpmab
