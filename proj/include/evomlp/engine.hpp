#ifndef EVOMLP_ENGINE_HPP
#define EVOMLP_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "evomlp/data.hpp"
#include "evomlp/de.hpp"
#include "evomlp/ga.hpp"
#include "evomlp/mlp.hpp"
#include "evomlp/pso.hpp"
#include "evomlp/trace.hpp"

namespace evomlp {

using AlgorithmParams = std::variant<pso::Params, de::Params, ga::Params>;

std::string_view algorithm_name(const AlgorithmParams& params);

enum class StopStatistic { BestFitness, WorstFitness, MeanFitness };

std::string_view to_string(StopStatistic s);
StopStatistic parse_stop_statistic(std::string_view name);

struct StoppingRule {
    StopStatistic statistic = StopStatistic::BestFitness;
    double threshold = 1.0;             // K
    std::size_t max_iterations = 200;   // T_max
};

struct InitRange {
    double low = -1.0;
    double high = 1.0;
};

struct RunConfig {
    AlgorithmParams algorithm = de::Params{};
    Topology topology;
    std::size_t population_size = 50;
    StoppingRule stopping;
    std::uint64_t seed = 1;
    std::size_t workers = 1;  // 0 = hardware concurrency
    InitRange init_range;

    /// Every violated constraint, empty when valid.
    std::vector<std::string> check() const;
    /// Throws ValidationError carrying check()'s list.
    void validate() const;
};

/// Mutable state of one run. `members[i]` and `fitness[i]` always describe the
/// same genome; for PSO `particles[i].position == members[i]`.
struct Population {
    std::vector<Genome> members;
    std::vector<double> fitness;
    std::vector<pso::Particle<double>> particles;
    /// Whether member i was replaced in the last generation (DE: trial won,
    /// GA: selection swapped in a fresh genome).
    std::vector<bool> replaced;
    std::size_t generation = 0;

    /// Best genome ever evaluated and its fitness.
    Genome best;
    double best_fitness = -1.0;

    std::size_t evaluations = 0;

    std::size_t size() const { return members.size(); }
};

struct GenerationStats {
    std::size_t generation = 0;
    double best = 0.0;   // best-so-far archive
    double worst = 0.0;  // current population
    double mean = 0.0;   // current population
};

enum class StopReason { Threshold, MaxIterations };

struct RunResult {
    Genome best;
    double best_fitness = 0.0;
    std::vector<GenerationStats> history;
    StopReason stopped_by = StopReason::MaxIterations;
    std::size_t evaluations = 0;

    std::size_t generations() const { return history.empty() ? 0 : history.size() - 1; }
};

/// Classification accuracy over every dataset row.
double evaluate_fitness(const Genome& genome, const Topology& topology, const Dataset& dataset);

/// Generation 0: U(init_range) genomes (plus velocities for PSO), all evaluated.
Population init_population(const RunConfig& config, const Dataset& dataset);

/// One synchronous generation: broadcast snapshot, per-member operators and
/// evaluation in parallel, then commits and archive update in index order.
void step(Population& population, const RunConfig& config, const Dataset& dataset);

double population_statistic(const Population& population, StopStatistic statistic);
GenerationStats generation_stats(const Population& population);
bool should_stop(const Population& population, const StoppingRule& rule);

using GenerationCallback = std::function<void(const GenerationStats&)>;

RunResult run(const RunConfig& config, const Dataset& dataset, TraceSink* trace = nullptr,
              const GenerationCallback& on_generation = {});

/// Calls fn(i) for i in [0, n) on up to `workers` threads. The first failure
/// by index is rethrown after all work finishes.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace evomlp

#endif  // EVOMLP_ENGINE_HPP
