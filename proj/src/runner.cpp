#include "mpmab/runner.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "mpmab/simulation.hpp"

namespace mpmab {

ScenarioResult run_scenario(const ScenarioSpec& spec, const RunOptions& options)
{
    validate(spec);
    ScenarioResult result;
    result.spec = spec;
    result.constants = resolve_phase_constants(spec);
    const auto reps = static_cast<std::size_t>(spec.repetitions);
    result.runs.resize(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        result.seeds.push_back(spec.base_seed + i);
    }

    auto run_one = [&](std::size_t i) {
        Simulation sim(make_setup(spec, result.constants, static_cast<int>(i)));
        sim.run();
        result.runs[i] = sim.take_series();
    };

    const auto jobs = static_cast<std::size_t>(std::clamp(options.jobs, 1, 256));
    if (jobs == 1 || reps == 1) {
        for (std::size_t i = 0; i < reps; ++i) {
            run_one(i);
        }
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < std::min(jobs, reps); ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < reps; i += jobs) {
                        run_one(i);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) {
            t.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    result.aggregate = aggregate(result.runs);
    return result;
}

std::vector<ScenarioResult> compare(const std::vector<ScenarioSpec>& specs,
                                    const RunOptions& options)
{
    if (specs.empty()) {
        throw ConfigError("compare needs at least one scenario");
    }
    const auto& ref = specs.front();
    for (const auto& s : specs) {
        if (s.arms != ref.arms || s.means != ref.means || s.horizon != ref.horizon ||
            s.reward != ref.reward || s.repetitions != ref.repetitions ||
            s.base_seed != ref.base_seed) {
            throw ConfigError("compare needs a shared environment: '" + s.name + "' differs from '" +
                              ref.name + "' in K, means, T, reward, repetitions or base_seed");
        }
    }
    std::vector<ScenarioResult> out;
    out.reserve(specs.size());
    for (const auto& s : specs) {
        out.push_back(run_scenario(s, options));
    }
    return out;
}

std::vector<ComparisonRow> comparison_rows(const std::vector<ScenarioResult>& results)
{
    std::vector<ComparisonRow> rows;
    for (const auto& r : results) {
        rows.push_back({r.spec.name, r.spec.algorithm, r.aggregate.repetitions,
                        r.aggregate.mean_final_regret, r.aggregate.std_final_regret,
                        r.aggregate.mean_final_collisions, r.aggregate.std_final_collisions});
    }
    return rows;
}

}  // namespace mpmab
