#include "evomlp/engine.hpp"

#include <cmath>
#include <limits>

#include "evomlp/format.hpp"
#include "evomlp/random.hpp"

namespace evomlp {

std::string_view algorithm_name(const AlgorithmParams& params) {
    switch (params.index()) {
    case 0:
        return "pso";
    case 1:
        return "de";
    default:
        return "ga";
    }
}

std::string_view to_string(StopStatistic s) {
    switch (s) {
    case StopStatistic::BestFitness:
        return "best";
    case StopStatistic::WorstFitness:
        return "worst";
    case StopStatistic::MeanFitness:
        return "mean";
    }
    return "unknown";
}

StopStatistic parse_stop_statistic(std::string_view name) {
    for (auto s : {StopStatistic::BestFitness, StopStatistic::WorstFitness, StopStatistic::MeanFitness})
        if (name == to_string(s))
            return s;
    throw ValidationError("unknown stopping statistic '" + std::string(name) + "' (expected best, worst or mean)");
}

std::vector<std::string> RunConfig::check() const {
    std::vector<std::string> problems;
    try {
        topology.validate();
    } catch (const ValidationError& e) {
        problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
    std::size_t min_np = 4;
    if (const auto* p = std::get_if<pso::Params>(&algorithm)) {
        auto more = p->check();
        problems.insert(problems.end(), more.begin(), more.end());
    } else if (const auto* d = std::get_if<de::Params>(&algorithm)) {
        auto more = d->check();
        problems.insert(problems.end(), more.begin(), more.end());
        min_np = de::min_population(d->strategy);
    } else {
        auto more = std::get<ga::Params>(algorithm).check();
        problems.insert(problems.end(), more.begin(), more.end());
    }
    if (population_size < min_np)
        problems.push_back("population_size must be >= " + std::to_string(min_np) + " for " +
                           std::string(algorithm_name(algorithm)) +
                           (std::holds_alternative<de::Params>(algorithm)
                                ? "/" + std::string(de::to_string(std::get<de::Params>(algorithm).strategy))
                                : std::string()) +
                           " (got " + std::to_string(population_size) + ")");
    if (!(std::isfinite(init_range.low) && std::isfinite(init_range.high) && init_range.low < init_range.high))
        problems.push_back("init_range requires low < high (got [" + format_real(init_range.low) + ", " +
                           format_real(init_range.high) + "])");
    if (!(stopping.threshold > 0.0 && stopping.threshold <= 1.0))
        problems.push_back("stopping.threshold must satisfy K in (0, 1] (got " + format_real(stopping.threshold) + ")");
    return problems;
}

void RunConfig::validate() const {
    auto problems = check();
    if (!problems.empty())
        throw ValidationError(std::move(problems));
}

double evaluate_fitness(const Genome& genome, const Topology& topology, const Dataset& dataset) {
    if (dataset.rows() == 0)
        throw ValidationError("cannot evaluate fitness on an empty dataset");
    if (dataset.dim() != topology.input_dim)
        throw DimensionError("topology input_dim " + std::to_string(topology.input_dim) +
                             " does not match dataset feature width " + std::to_string(dataset.dim()));
    std::size_t correct = 0;
    for (Eigen::Index r = 0; r < dataset.features.rows(); ++r)
        if (predict(topology, genome, dataset.features.row(r)) == dataset.labels[static_cast<std::size_t>(r)])
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(dataset.rows());
}

namespace {

Genome random_genome(std::size_t length, double low, double high, RandomStream& rng) {
    Genome g(static_cast<Eigen::Index>(length));
    for (Eigen::Index j = 0; j < g.size(); ++j)
        g(j) = rng.uniform(low, high);
    return g;
}

// Archive update in member-index order; strict improvement only.
void update_archive(Population& pop) {
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (pop.fitness[i] > pop.best_fitness) {
            pop.best_fitness = pop.fitness[i];
            pop.best = pop.members[i];
        }
    }
}

void step_pso(Population& pop, const pso::Params& params, const RunConfig& config, const Dataset& data) {
    const Genome global_best = pop.best;
    const auto t = pop.generation;
    const auto t_max = config.stopping.max_iterations;
    std::vector<pso::Particle<double>> next(pop.size());
    std::vector<double> fitness(pop.size());
    parallel_for(pop.size(), config.workers, [&](std::size_t i) {
        auto rng = rng_stream(config.seed, t + 1, i, Purpose::PsoUpdate);
        auto moved = pso::pso_update(pop.particles[i], global_best, params, t, t_max, rng);
        fitness[i] = evaluate_fitness(moved.position, config.topology, data);
        next[i] = pso::pso_post_evaluate(std::move(moved), fitness[i]);
    });
    for (std::size_t i = 0; i < pop.size(); ++i) {
        pop.particles[i] = std::move(next[i]);
        pop.members[i] = pop.particles[i].position;
        pop.fitness[i] = fitness[i];
    }
    pop.evaluations += pop.size();
}

void step_de(Population& pop, const de::Params& params, const RunConfig& config, const Dataset& data) {
    const auto t = pop.generation;
    const std::vector<Genome> snapshot = pop.members;
    const Genome global_best = pop.best;
    std::vector<Genome> trials(pop.size());
    std::vector<double> trial_fitness(pop.size());
    parallel_for(pop.size(), config.workers, [&](std::size_t i) {
        auto idx_rng = rng_stream(config.seed, t + 1, i, Purpose::DeIndices);
        const Genome v = de::donor<double>(params.strategy, snapshot, i, global_best, params.f_scale, idx_rng);
        auto cx_rng = rng_stream(config.seed, t + 1, i, Purpose::DeCrossover);
        trials[i] = de::binomial_crossover<double>(snapshot[i], v, params.cr, cx_rng);
        trial_fitness[i] = evaluate_fitness(trials[i], config.topology, data);
    });
    for (std::size_t i = 0; i < pop.size(); ++i) {
        auto sel = de::de_select<double>(snapshot[i], trials[i], pop.fitness[i], trial_fitness[i]);
        pop.replaced[i] = sel.replaced;
        if (sel.replaced) {
            pop.members[i] = std::move(sel.survivor);
            pop.fitness[i] = trial_fitness[i];
        }
    }
    pop.evaluations += pop.size();
}

void step_ga(Population& pop, const ga::Params& params, const RunConfig& config, const Dataset& data) {
    const auto t = pop.generation;
    const auto np = pop.size();
    const std::vector<Genome> snapshot = pop.members;
    const std::vector<double> snapshot_fitness = pop.fitness;
    double pop_min = std::numeric_limits<double>::infinity();
    double pop_max = -std::numeric_limits<double>::infinity();
    for (const auto& g : snapshot) {
        pop_min = std::min(pop_min, g.minCoeff());
        pop_max = std::max(pop_max, g.maxCoeff());
    }

    std::vector<Genome> next(np);
    std::vector<double> fitness(np);
    std::vector<char> replaced(np, 0);
    parallel_for(np, config.workers, [&](std::size_t i) {
        Genome g = snapshot[i];
        auto sel_rng = rng_stream(config.seed, t + 1, i, Purpose::GaSelection);
        if (ga::select_replace(i, snapshot_fitness, params, sel_rng)) {
            auto init_rng = rng_stream(config.seed, t + 1, i, Purpose::GaReplacement);
            g = random_genome(static_cast<std::size_t>(g.size()), config.init_range.low, config.init_range.high,
                              init_rng);
            replaced[i] = 1;
        }
        auto cx_rng = rng_stream(config.seed, t + 1, i, Purpose::GaCrossover);
        auto partner = static_cast<std::size_t>(cx_rng.index(np - 1));
        if (partner >= i)
            ++partner;
        g = ga::ga_crossover<double>(std::move(g), snapshot[partner], params.cr, cx_rng);
        auto mut_rng = rng_stream(config.seed, t + 1, i, Purpose::GaMutation);
        if (params.mutation == ga::MutationKind::RandomSubstitution)
            g = ga::mutate_substitution<double>(std::move(g), params.p_m, pop_min, pop_max, mut_rng);
        else
            g = ga::mutate_interchange<double>(std::move(g), params.p_m, mut_rng);
        fitness[i] = evaluate_fitness(g, config.topology, data);
        next[i] = std::move(g);
    });
    for (std::size_t i = 0; i < np; ++i) {
        pop.members[i] = std::move(next[i]);
        pop.fitness[i] = fitness[i];
        pop.replaced[i] = replaced[i] != 0;
    }
    pop.evaluations += np;
}

}  // namespace

Population init_population(const RunConfig& config, const Dataset& dataset) {
    config.validate();
    if (dataset.dim() != config.topology.input_dim)
        throw DimensionError("topology input_dim " + std::to_string(config.topology.input_dim) +
                             " does not match dataset feature width " + std::to_string(dataset.dim()));

    const auto np = config.population_size;
    const auto length = genome_length(config.topology);
    const double low = config.init_range.low;
    const double high = config.init_range.high;
    const bool is_pso = std::holds_alternative<pso::Params>(config.algorithm);

    Population pop;
    pop.members.resize(np);
    pop.fitness.resize(np);
    pop.replaced.assign(np, false);
    if (is_pso)
        pop.particles.resize(np);

    parallel_for(np, config.workers, [&](std::size_t i) {
        auto rng = rng_stream(config.seed, 0, i, Purpose::Init);
        pop.members[i] = random_genome(length, low, high, rng);
        pop.fitness[i] = evaluate_fitness(pop.members[i], config.topology, dataset);
        if (is_pso) {
            const double reach = (high - low) / 4.0;
            auto& p = pop.particles[i];
            p.position = pop.members[i];
            p.velocity = random_genome(length, -reach, reach, rng);
            p.personal_best = p.position;
            p.personal_best_fitness = pop.fitness[i];
            p.relative_improvement = 0.0;
        }
    });
    pop.evaluations = np;
    update_archive(pop);
    return pop;
}

void step(Population& pop, const RunConfig& config, const Dataset& dataset) {
    try {
        if (const auto* p = std::get_if<pso::Params>(&config.algorithm))
            step_pso(pop, *p, config, dataset);
        else if (const auto* d = std::get_if<de::Params>(&config.algorithm))
            step_de(pop, *d, config, dataset);
        else
            step_ga(pop, std::get<ga::Params>(config.algorithm), config, dataset);
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw Error("generation " + std::to_string(pop.generation + 1) + ": " + e.what());
    }
    update_archive(pop);
    ++pop.generation;
}

double population_statistic(const Population& pop, StopStatistic statistic) {
    switch (statistic) {
    case StopStatistic::BestFitness:
        return pop.best_fitness;
    case StopStatistic::WorstFitness:
        return *std::min_element(pop.fitness.begin(), pop.fitness.end());
    case StopStatistic::MeanFitness: {
        double sum = 0.0;
        for (double f : pop.fitness)
            sum += f;
        return sum / static_cast<double>(pop.fitness.size());
    }
    }
    return 0.0;
}

GenerationStats generation_stats(const Population& pop) {
    return {pop.generation, pop.best_fitness, population_statistic(pop, StopStatistic::WorstFitness),
            population_statistic(pop, StopStatistic::MeanFitness)};
}

bool should_stop(const Population& pop, const StoppingRule& rule) {
    return population_statistic(pop, rule.statistic) >= rule.threshold || pop.generation >= rule.max_iterations;
}

namespace {

class Tracer {
public:
    Tracer(TraceSink* sink, const Population& gen0, bool is_pso) : sink_(sink), is_pso_(is_pso) {
        if (!sink_)
            return;
        Eigen::MatrixXd x(static_cast<Eigen::Index>(gen0.size()), gen0.members.front().size());
        for (std::size_t i = 0; i < gen0.size(); ++i)
            x.row(static_cast<Eigen::Index>(i)) = gen0.members[i].transpose();
        basis_ = fit_pca(x);
    }

    void record(const Population& pop) {
        if (!sink_)
            return;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const Eigen::Vector2d xy = project(basis_, pop.members[i]);
            TraceEvent e{pop.generation, i, xy(0), xy(1), pop.fitness[i], std::nullopt, std::nullopt};
            if (is_pso_)
                e.personal_best_fitness = pop.particles[i].personal_best_fitness;
            else
                e.replaced = static_cast<bool>(pop.replaced[i]);
            sink_->emit(e);
        }
        sink_->flush();
    }

private:
    TraceSink* sink_;
    bool is_pso_;
    PcaBasis basis_;
};

}  // namespace

RunResult run(const RunConfig& config, const Dataset& dataset, TraceSink* trace,
              const GenerationCallback& on_generation) {
    Population pop = init_population(config, dataset);
    Tracer tracer(trace, pop, std::holds_alternative<pso::Params>(config.algorithm));

    RunResult result;
    auto record = [&] {
        result.history.push_back(generation_stats(pop));
        tracer.record(pop);
        if (on_generation)
            on_generation(result.history.back());
    };
    record();
    while (!should_stop(pop, config.stopping)) {
        step(pop, config, dataset);
        record();
    }
    result.best = pop.best;
    result.best_fitness = pop.best_fitness;
    result.evaluations = pop.evaluations;
    result.stopped_by = population_statistic(pop, config.stopping.statistic) >= config.stopping.threshold
                            ? StopReason::Threshold
                            : StopReason::MaxIterations;
    return result;
}

}  // namespace evomlp
