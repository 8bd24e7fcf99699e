// Command-line front end: run and compare scenarios, print phase constants,
// and run the exhaustive trekking check.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mpmab/output.hpp"
#include "mpmab/phase_math.hpp"
#include "mpmab/runner.hpp"
#include "mpmab/scenario.hpp"
#include "mpmab/trek_verify.hpp"

namespace {

using namespace mpmab;

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonFlags {
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
    std::optional<int> players;
    std::string out_dir = "results";
    std::string format = "csv";
    bool raw = false;
    int jobs = 0;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonFlags& f)
{
    cmd->add_option("--seed", f.seed, "base seed (repetition i uses seed + i)");
    cmd->add_option("--reps", f.reps, "number of repetitions")->check(CLI::PositiveNumber);
    cmd->add_option("--players", f.players, "initial number of players")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--out-dir", f.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", f.format, "series format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_flag("--raw", f.raw, "also write every repetition's series");
    cmd->add_option("--jobs", f.jobs, "worker threads (0 = hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--set", f.sets, "config override section.key=value (repeatable)");
}

std::vector<std::string> assignments(const CommonFlags& f)
{
    std::vector<std::string> out = f.sets;
    if (f.seed) out.push_back("scenario.base_seed=" + std::to_string(*f.seed));
    if (f.reps) out.push_back("scenario.repetitions=" + std::to_string(*f.reps));
    if (f.players) out.push_back("population.initial=" + std::to_string(*f.players));
    return out;
}

RunOptions run_options(const CommonFlags& f)
{
    RunOptions o;
    o.jobs = f.jobs > 0 ? f.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return o;
}

void report(const ScenarioResult& r, const std::vector<std::filesystem::path>& paths)
{
    const auto& a = r.aggregate;
    std::cout << r.spec.name << " (" << to_string(r.spec.algorithm) << ", " << a.repetitions
              << " reps, T=" << r.spec.horizon << "): final regret " << a.mean_final_regret
              << " +- " << a.std_final_regret << ", collisions " << a.mean_final_collisions
              << " +- " << a.std_final_collisions << '\n';
    for (const auto& p : paths) {
        std::cout << "  wrote " << p.string() << '\n';
    }
}

int cmd_run(const std::string& config, const CommonFlags& f)
{
    const auto spec = load_scenario(config, assignments(f));
    const auto result = run_scenario(spec, run_options(f));
    const auto paths =
        emit_outputs(result, f.out_dir, {parse_output_format(f.format), f.raw});
    report(result, paths);
    return 0;
}

int cmd_compare(const std::vector<std::string>& configs, const std::string& algorithms,
                const CommonFlags& f)
{
    std::vector<ScenarioSpec> specs;
    for (const auto& c : configs) {
        const auto base = load_scenario(c, assignments(f));
        if (algorithms.empty()) {
            specs.push_back(base);
            continue;
        }
        std::stringstream list(algorithms);
        std::string alg;
        while (std::getline(list, alg, ',')) {
            auto s = base;
            try {
                s.algorithm = parse_algorithm(alg);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            s.name = base.name + "-" + alg;
            specs.push_back(s);
        }
    }
    const auto results = compare(specs, run_options(f));
    const EmitOptions emit{parse_output_format(f.format), f.raw};
    for (const auto& r : results) {
        emit_outputs(r, f.out_dir, emit);
    }
    const auto rows = comparison_rows(results);
    write_comparison(std::cout, rows);
    std::filesystem::create_directories(f.out_dir);
    const auto table = std::filesystem::path(f.out_dir) / "comparison.csv";
    std::ofstream out(table);
    write_comparison_csv(out, rows);
    std::cout << "wrote " << table.string() << " and per-scenario outputs in " << f.out_dir << '\n';
    return 0;
}

struct PhaseFlags {
    int arms = 10;
    std::optional<int> players;
    double epsilon = 0.1;
    double delta = 0.1;
    Round horizon = 500000;
    double churn = 1.0;
    std::optional<Round> t0;
    std::optional<Round> t0_mc;
};

int cmd_phase_math(const PhaseFlags& p)
{
    const int n = p.players.value_or(p.arms);
    const Round t0 = p.t0.value_or(phase::t0_st(p.arms, p.epsilon, p.delta));
    const Round t0mc = p.t0_mc.value_or(phase::t0_mc(p.arms, p.epsilon, p.delta));
    const Round tr_up = phase::t_tr_up(p.arms, n);
    const Round tr_down = phase::t_tr_down(p.arms, n);
    const double x = std::max(p.churn, 1.0);
    std::cout << "K=" << p.arms << " N=" << n << " epsilon=" << p.epsilon << " delta=" << p.delta
              << " T=" << p.horizon << " x=" << p.churn << '\n';
    const std::pair<const char*, Round> rows[] = {
        {"t_rh(K, delta)", phase::t_rh(p.arms, p.delta)},
        {"t_sh(K, N, eps, delta)", phase::t_sh(p.arms, n, p.epsilon, p.delta)},
        {"t0_st(K, eps, delta)", phase::t0_st(p.arms, p.epsilon, p.delta)},
        {"t_tr_up(K, N)", tr_up},
        {"t_tr_down(K, N)", tr_down},
        {"t0_mc(K, eps, delta)", phase::t0_mc(p.arms, p.epsilon, p.delta)},
        {"t_ep(T, K, T0, Ttr_up)", phase::t_ep(p.horizon, p.arms, t0, tr_up, x)},
        {"t_ep(T, K, T0MC, 0)", phase::t_ep(p.horizon, p.arms, t0mc, 0, x)},
        {"t0_dts(K, x, eps, delta)", phase::t0_dts(p.arms, p.churn, p.epsilon, p.delta)},
        {"t_trek_cycle(K)", phase::t_trek_cycle(p.arms)},
        {"t_l(T, K, x)", phase::t_l(p.horizon, p.arms, x)},
        {"c_m(K, N, eps, delta)", phase::c_m(p.arms, n, p.epsilon, p.delta)},
    };
    for (const auto& [label, value] : rows) {
        std::cout << std::left << std::setw(26) << label << value << '\n';
    }
    return 0;
}

int cmd_verify(int max_k, const std::string& variant)
{
    bool ok = true;
    std::vector<TrekVariant> variants;
    if (variant == "up" || variant == "both") variants.push_back(TrekVariant::up);
    if (variant == "down" || variant == "both") variants.push_back(TrekVariant::down);
    for (auto v : variants) {
        for (const auto& c : verify_trekking(v, max_k)) {
            std::cout << "trek-" << to_string(v) << " K=" << c.arms << " N=" << c.players
                      << " cases=" << c.cases << " worst_settle=" << c.worst_settle
                      << " bound=" << c.bound << " worst_collisions=" << c.worst_collisions
                      << (c.violations.empty() ? " ok" : " VIOLATED") << '\n';
            for (const auto& msg : c.violations) {
                std::cout << "  " << msg << '\n';
            }
            ok = ok && c.violations.empty();
        }
    }
    std::cout << (ok ? "all trekking bounds hold\n" : "trekking bound violations found\n");
    return ok ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multi-player bandit simulator: trekking and musical-chairs policies"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::string run_config;
    auto* run = app.add_subcommand("run", "run one scenario config");
    run->add_option("config", run_config, "scenario INI file")->required();
    add_common(run, run_flags);

    CommonFlags cmp_flags;
    std::vector<std::string> cmp_configs;
    std::string cmp_algorithms;
    auto* cmp = app.add_subcommand("compare", "run scenarios on shared reward streams");
    cmp->add_option("configs", cmp_configs, "scenario INI files")->required();
    cmp->add_option("--algorithms", cmp_algorithms,
                    "comma list; runs every config once per algorithm");
    add_common(cmp, cmp_flags);

    PhaseFlags pf;
    auto* pm = app.add_subcommand("phase-math", "print the closed-form phase constants");
    pm->add_option("-K,--arms", pf.arms, "number of arms")->capture_default_str();
    pm->add_option("-N,--players", pf.players, "number of players (default K)");
    pm->add_option("--epsilon", pf.epsilon)->capture_default_str();
    pm->add_option("--delta", pf.delta)->capture_default_str();
    pm->add_option("-T,--horizon", pf.horizon)->capture_default_str();
    pm->add_option("-x,--churn", pf.churn, "churn bound")->capture_default_str();
    pm->add_option("--T0", pf.t0, "learning length used in the epoch formula");
    pm->add_option("--T0MC", pf.t0_mc, "musical-chairs learning length for its epoch");

    int max_k = 6;
    std::string variant = "both";
    auto* vt = app.add_subcommand("verify-trekking", "exhaustive trekking settling check");
    vt->add_option("--max-k", max_k, "largest K")->check(CLI::Range(2, 8))->capture_default_str();
    vt->add_option("--variant", variant)->check(CLI::IsMember({"up", "down", "both"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_config, run_flags);
        if (*cmp) return cmd_compare(cmp_configs, cmp_algorithms, cmp_flags);
        if (*pm) return cmd_phase_math(pf);
        if (*vt) return cmd_verify(max_k, variant);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const phase::DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
