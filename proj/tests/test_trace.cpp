#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "evomlp/engine.hpp"
#include "evomlp/synthetic.hpp"
#include "evomlp/trace.hpp"
#include "oracles.hpp"

using namespace evomlp;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    auto rng = rng_stream(seed, 0, 0, Purpose::Test);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = rng.uniform(-1, 1) * static_cast<double>(c + 1);  // distinct spreads
    return m;
}

double dot(const Eigen::VectorXd& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
        s += a(static_cast<Eigen::Index>(i)) * b[i];
    return s;
}

/// Blobs with a few flipped labels, so no run reaches fitness 1 early.
Dataset noisy_blobs(std::size_t size, std::uint64_t seed) {
    auto data = to_dataset(make_blobs(size, seed));
    for (std::size_t i = 0; i < data.labels.size(); i += 7)
        data.labels[i] = 1 - data.labels[i];
    return data;
}

}  // namespace

TEST_CASE("identical genomes give a degenerate basis") {
    const Eigen::MatrixXd pop = Eigen::MatrixXd::Constant(5, 4, 0.3);
    const auto basis = fit_pca(pop);
    CHECK(basis.degenerate);
    CHECK(basis.explained_variance.isZero(0.0));
    for (Eigen::Index r = 0; r < pop.rows(); ++r)
        CHECK(project(basis, pop.row(r).transpose()).isZero(0.0));
}

TEST_CASE("variance along one axis") {
    Eigen::MatrixXd pop = Eigen::MatrixXd::Zero(6, 4);
    pop.col(0) << -2, -1, 0, 1, 2, 3;
    const auto basis = fit_pca(pop);
    CHECK(std::abs(std::abs(basis.components(0, 0)) - 1.0) < 1e-12);
    CHECK(basis.explained_variance(1) == doctest::Approx(0.0));
    CHECK(std::abs(basis.components.col(0).dot(basis.components.col(1))) < 1e-12);
    CHECK(basis.components.col(1).norm() == doctest::Approx(1.0));
}

TEST_CASE("20 x 6 basis matches the Jacobi oracle") {
    const auto pop = random_matrix(20, 6, 123);
    const auto basis = fit_pca(pop);
    const auto [values, vectors] = oracle::jacobi_eigen(oracle::covariance(pop));
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(dot(basis.components.col(k), vectors[static_cast<std::size_t>(k)])) >= 1.0 - 1e-8);
        CHECK(std::abs(basis.explained_variance(k) - values[static_cast<std::size_t>(k)]) <= 1e-10);
    }

    // Projections agree with the oracle basis up to sign.
    auto rng = rng_stream(321, 0, 0, Purpose::Test);
    Eigen::VectorXd g(6);
    for (Eigen::Index j = 0; j < 6; ++j)
        g(j) = rng.uniform(-3, 3);
    const auto xy = project(basis, g);
    const Eigen::VectorXd mean = pop.colwise().mean().transpose();
    for (int k = 0; k < 2; ++k) {
        const double expect = dot(g - mean, vectors[static_cast<std::size_t>(k)]);
        CHECK(std::abs(std::abs(xy(k)) - std::abs(expect)) <= 1e-8);
    }
}

TEST_CASE("Gram route agrees with the covariance route") {
    // Wide matrix (G > NP) against the oracle on the full covariance.
    const auto pop = random_matrix(8, 15, 77);
    const auto basis = fit_pca(pop);
    const auto [values, vectors] = oracle::jacobi_eigen(oracle::covariance(pop));
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(dot(basis.components.col(k), vectors[static_cast<std::size_t>(k)])) >= 1.0 - 1e-8);
        CHECK(std::abs(basis.explained_variance(k) - values[static_cast<std::size_t>(k)]) <= 1e-10);
    }
    CHECK(std::abs(basis.components.col(0).norm() - 1.0) < 1e-12);
    CHECK(std::abs(basis.components.col(0).dot(basis.components.col(1))) < 1e-12);
}

TEST_CASE("sign convention: largest-magnitude entry is positive") {
    const auto basis = fit_pca(random_matrix(12, 5, 9));
    for (int k = 0; k < 2; ++k) {
        Eigen::Index arg;
        basis.components.col(k).cwiseAbs().maxCoeff(&arg);
        CHECK(basis.components(arg, k) > 0.0);
    }
}

TEST_CASE("projection of the mean and of mean + first component") {
    const auto basis = fit_pca(random_matrix(10, 4, 5));
    CHECK(project(basis, basis.mean).isZero(1e-15));
    const auto p = project(basis, Eigen::VectorXd(basis.mean + basis.components.col(0)));
    CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(p(1)) < 1e-12);
}

TEST_CASE("fit_pca input checks") {
    CHECK_THROWS(fit_pca(Eigen::MatrixXd::Zero(2, 5)));
    CHECK_THROWS(fit_pca(Eigen::MatrixXd::Zero(5, 1)));
}

TEST_CASE("JSON lines") {
    TraceEvent e{2, 3, 0.5, -1.25, 0.75, true, std::nullopt};
    CHECK(to_json_line(e) == R"({"gen":2,"idx":3,"x":0.5,"y":-1.25,"fit":0.75,"replaced":true})");
    TraceEvent p{0, 1, 0.1, 0.2, 1, std::nullopt, 0.5};
    CHECK(to_json_line(p) == R"({"gen":0,"idx":1,"x":0.1,"y":0.2,"fit":1,"pbest":0.5})");
}

TEST_CASE("trace event counts and file output") {
    const auto data = noisy_blobs(40, 1);
    RunConfig cfg;
    cfg.topology = {2, {2}, 2, Activation::Tanh};
    cfg.population_size = 10;
    cfg.stopping.max_iterations = 5;
    cfg.algorithm = pso::Params{};
    MemoryTraceSink sink;
    const auto res = run(cfg, data, &sink);
    REQUIRE(res.generations() == 5);
    CHECK(sink.events.size() == 60);
    for (std::size_t k = 0; k < sink.events.size(); ++k) {
        CHECK(sink.events[k].generation == k / 10);
        CHECK(sink.events[k].member_index == k % 10);
        CHECK(sink.events[k].personal_best_fitness.has_value());
    }

    const auto path = std::filesystem::temp_directory_path() / "evomlp_trace_test.jsonl";
    {
        JsonlTraceSink file(path);
        run(cfg, data, &file);
    }
    std::ifstream in(path);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) {
        CHECK(line == to_json_line(sink.events[lines]));
        ++lines;
    }
    CHECK(lines == 60);
    CHECK_THROWS_AS(JsonlTraceSink("/nonexistent/dir/trace.jsonl"), IoError);
}

TEST_CASE("unreplaced DE members do not move in the trace") {
    const auto data = noisy_blobs(40, 2);
    RunConfig cfg;
    cfg.topology = {2, {3}, 2, Activation::Tanh};
    cfg.population_size = 12;
    cfg.stopping.max_iterations = 15;
    cfg.algorithm = de::Params{};
    MemoryTraceSink sink;
    run(cfg, data, &sink);
    std::map<std::size_t, TraceEvent> last;
    std::size_t checked = 0;
    for (const auto& e : sink.events) {
        if (e.generation > 0) {
            REQUIRE(e.replaced.has_value());
            if (!*e.replaced) {
                const auto& prev = last.at(e.member_index);
                CHECK(e.x == prev.x);
                CHECK(e.y == prev.y);
                CHECK(e.fitness == prev.fitness);
                ++checked;
            }
        }
        last[e.member_index] = e;
    }
    CHECK(checked > 0);
}
