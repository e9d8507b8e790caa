#include "doctest.h"

#include <atomic>
#include <stdexcept>

#include "evomlp/engine.hpp"
#include "evomlp/synthetic.hpp"
#include "oracles.hpp"

using namespace evomlp;

namespace {

const Topology kXorTopology{2, {2}, 2, Activation::Tanh};

/// Hidden units approximate OR and AND; the second output fires on OR and not AND.
Genome xor_genome() {
    Genome g(12);
    g << 10, 10, -5, 10, 10, -15,  // hidden
        0, 0, 0, 5, -5, -5;        // output
    return g;
}

RunConfig config_for(AlgorithmParams algorithm, std::size_t np, std::size_t t_max, std::uint64_t seed = 1) {
    RunConfig c;
    c.algorithm = algorithm;
    c.topology = kXorTopology;
    c.population_size = np;
    c.stopping.max_iterations = t_max;
    c.seed = seed;
    return c;
}

bool same_genomes(const std::vector<Genome>& a, const std::vector<Genome>& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].size() != b[i].size() || !(a[i].array() == b[i].array()).all())
            return false;
    return true;
}

}  // namespace

TEST_CASE("fitness examples") {
    const auto xor4 = to_dataset(make_xor(4, 1));
    CHECK(evaluate_fitness(xor_genome(), kXorTopology, xor4) == 1.0);
    CHECK(evaluate_fitness(Genome::Zero(12), kXorTopology, xor4) == 0.5);

    const auto blobs = to_dataset(make_blobs(200, 17));
    auto rng = rng_stream(17, 0, 0, Purpose::Test);
    for (int k = 0; k < 10; ++k) {
        Genome g(12);
        for (Eigen::Index j = 0; j < 12; ++j)
            g(j) = rng.uniform(-1, 1);
        CHECK(evaluate_fitness(g, kXorTopology, blobs) == oracle::accuracy(kXorTopology, g, blobs.features, blobs.labels));
    }
    CHECK_THROWS_AS(evaluate_fitness(Genome::Zero(12), Topology{3, {2}, 2, Activation::Tanh}, xor4), DimensionError);
}

TEST_CASE("initial population structure") {
    const auto data = to_dataset(make_xor(4, 1));
    const auto cfg = config_for(de::Params{}, 10, 5);
    const auto pop = init_population(cfg, data);
    REQUIRE(pop.size() == 10);
    CHECK(pop.fitness.size() == 10);
    for (const auto& g : pop.members)
        CHECK(g.size() == 12);
    const auto best = std::max_element(pop.fitness.begin(), pop.fitness.end());
    CHECK(pop.best_fitness == *best);
    CHECK((pop.best.array() == pop.members[static_cast<std::size_t>(best - pop.fitness.begin())].array()).all());
    CHECK(pop.evaluations == 10);

    const auto again = init_population(cfg, data);
    CHECK(same_genomes(pop.members, again.members));
}

TEST_CASE("initial genomes are uniform over the init range") {
    Topology wide{9, {9}, 2, Activation::Tanh};  // 9*10 + 2*10 = 110 genes
    auto cfg = config_for(de::Params{}, 50, 1);
    cfg.topology = wide;
    Dataset data;
    data.features = Eigen::MatrixXd::Zero(2, 9);
    data.labels = {0, 1};
    data.class_names = {"a", "b"};
    const auto pop = init_population(cfg, data);
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& g : pop.members) {
        CHECK(g.minCoeff() > -1.0);
        CHECK(g.maxCoeff() < 1.0);
        sum += g.sum();
        count += static_cast<std::size_t>(g.size());
    }
    CHECK(std::abs(sum / static_cast<double>(count)) <= 0.05);
}

TEST_CASE("stopping rule") {
    Population pop;
    pop.fitness = {0.95, 0.5};
    pop.best_fitness = 0.95;
    pop.generation = 3;
    CHECK(should_stop(pop, StoppingRule{StopStatistic::BestFitness, 0.9, 100}));

    pop.fitness = {0.99, 0.5};
    pop.best_fitness = 0.99;
    pop.generation = 100;
    CHECK(should_stop(pop, StoppingRule{StopStatistic::BestFitness, 1.0, 100}));

    pop.fitness = {1.0, 0.7};
    pop.best_fitness = 1.0;
    pop.generation = 4;
    CHECK_FALSE(should_stop(pop, StoppingRule{StopStatistic::MeanFitness, 0.9, 100}));
    CHECK(population_statistic(pop, StopStatistic::MeanFitness) == doctest::Approx(0.85));
    CHECK(population_statistic(pop, StopStatistic::WorstFitness) == 0.7);
}

TEST_CASE("T_max = 0 returns the best initial genome") {
    const auto data = to_dataset(make_blobs(60, 2));
    const auto cfg = config_for(pso::Params{}, 12, 0);
    const auto res = run(cfg, data);
    CHECK(res.history.size() == 1);
    CHECK(res.generations() == 0);
    const auto pop = init_population(cfg, data);
    CHECK(res.best_fitness == pop.best_fitness);
    CHECK((res.best.array() == pop.best.array()).all());
}

TEST_CASE("runs are identical across worker counts") {
    const auto data = to_dataset(make_blobs(80, 5));
    const AlgorithmParams algorithms[] = {pso::Params{}, de::Params{}, ga::Params{}};
    for (const auto& algorithm : algorithms) {
        auto cfg = config_for(algorithm, 16, 15, 7);
        cfg.workers = 1;
        MemoryTraceSink t1, t8;
        const auto a = run(cfg, data, &t1);
        cfg.workers = 8;
        const auto b = run(cfg, data, &t8);
        CHECK((a.best.array() == b.best.array()).all());
        CHECK(a.best_fitness == b.best_fitness);
        REQUIRE(a.history.size() == b.history.size());
        for (std::size_t g = 0; g < a.history.size(); ++g) {
            CHECK(a.history[g].best == b.history[g].best);
            CHECK(a.history[g].worst == b.history[g].worst);
            CHECK(a.history[g].mean == b.history[g].mean);
        }
        REQUIRE(t1.events.size() == t8.events.size());
        for (std::size_t k = 0; k < t1.events.size(); ++k)
            CHECK(to_json_line(t1.events[k]) == to_json_line(t8.events[k]));
    }
}

TEST_CASE("archive is monotone and evaluations are counted") {
    const auto data = to_dataset(make_blobs(60, 3));
    const AlgorithmParams algorithms[] = {pso::Params{}, de::Params{}, ga::Params{}};
    for (const auto& algorithm : algorithms) {
        auto cfg = config_for(algorithm, 10, 20, 4);
        cfg.stopping.threshold = 1.0;
        const auto res = run(cfg, data);
        for (std::size_t g = 1; g < res.history.size(); ++g) {
            CHECK(res.history[g].best >= res.history[g - 1].best);
            CHECK(res.history[g].generation == g);
        }
        CHECK(res.best_fitness == res.history.back().best);
        CHECK(res.evaluations == 10 * res.history.size());
        CHECK(evaluate_fitness(res.best, cfg.topology, data) == res.best_fitness);
        for (const auto& s : res.history) {
            CHECK(s.worst <= s.mean);
            CHECK(s.mean <= s.best);
        }
    }
}

TEST_CASE("threshold stops early") {
    const auto data = to_dataset(make_blobs(60, 3));
    auto cfg = config_for(de::Params{}, 20, 200, 2);
    cfg.stopping.threshold = 0.6;
    const auto res = run(cfg, data);
    CHECK(res.stopped_by == StopReason::Threshold);
    CHECK(res.best_fitness >= 0.6);
    CHECK(res.generations() < 200);
}

TEST_CASE("GA with no crossover, no mutation and no selection pressure is a fixed point") {
    const auto data = to_dataset(make_blobs(40, 1));
    ga::Params p;
    p.selection = ga::SelectionKind::Tournament;
    p.cr = 1e-300;  // effectively never copies
    p.p_m = 0.0;
    auto cfg = config_for(p, 8, 5);
    auto pop = init_population(cfg, data);
    // Equal fitness everywhere: a tournament never finds a strictly fitter opponent.
    std::fill(pop.fitness.begin(), pop.fitness.end(), 0.5);
    const auto before = pop.members;
    step(pop, cfg, data);
    CHECK(same_genomes(before, pop.members));
}

TEST_CASE("config validation") {
    auto cfg = config_for(de::Params{de::Strategy::Rand2, 0.8, 0.9}, 5, 10);
    CHECK_FALSE(cfg.check().empty());
    cfg.population_size = 6;
    CHECK(cfg.check().empty());
    cfg.init_range = {1.0, -1.0};
    cfg.stopping.threshold = 0.0;
    CHECK(cfg.check().size() == 2);
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("parallel_for visits every index once and rethrows the lowest failure") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits)
        CHECK(h.load() == 1);
    try {
        parallel_for(50, 4, [](std::size_t i) {
            if (i == 7 || i == 30)
                throw std::runtime_error("fail " + std::to_string(i));
        });
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "fail 7");
    }
}
