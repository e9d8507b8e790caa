#ifndef EVOMLP_GA_HPP
#define EVOMLP_GA_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evomlp/error.hpp"
#include "evomlp/mlp.hpp"
#include "evomlp/random.hpp"

namespace evomlp::ga {

enum class SelectionKind { FitnessProportionate, Tournament };
enum class MutationKind { RandomSubstitution, RandomInterchange };

std::string_view to_string(SelectionKind s);
std::string_view to_string(MutationKind m);
SelectionKind parse_selection(std::string_view name);
MutationKind parse_mutation(std::string_view name);

struct Params {
    SelectionKind selection = SelectionKind::Tournament;
    MutationKind mutation = MutationKind::RandomSubstitution;
    double cr = 0.5;
    double p_m = 0.01;
    /// Use f_i / sum(f) as the roulette replacement probability instead of the
    /// inverse-fitness form. Makes the fittest individual the likeliest to go.
    bool literal_roulette = false;

    std::vector<std::string> check() const;
};

/// Probability that individual i is replaced under roulette selection.
///   inverse (default): (S - f_i) / ((NP - 1) S)
///   literal:           f_i / S
/// with S = sum of fitness. A zero sum gives the uniform 1 / NP.
inline double replacement_probability(std::size_t i, std::span<const double> fitness, bool literal = false) {
    const auto np = fitness.size();
    double sum = 0.0;
    for (double f : fitness)
        sum += f;
    if (sum == 0.0)
        return 1.0 / static_cast<double>(np);
    if (literal)
        return fitness[i] / sum;
    if (np < 2)
        return 0.0;
    return (sum - fitness[i]) / (static_cast<double>(np - 1) * sum);
}

/// Decides whether individual i is swapped for a fresh random genome.
inline bool select_replace(std::size_t i, std::span<const double> fitness, const Params& params, RandomStream& rng) {
    const auto np = fitness.size();
    if (np < 2)
        throw ValidationError("GA selection needs a population of at least 2");
    if (params.selection == SelectionKind::FitnessProportionate)
        return rng.uniform() < replacement_probability(i, fitness, params.literal_roulette);
    // Tournament: one uniform opponent other than i.
    auto opponent = static_cast<std::size_t>(rng.index(np - 1));
    if (opponent >= i)
        ++opponent;
    return fitness[i] < fitness[opponent];
}

/// Uniform crossover against one partner: each gene copied from the partner
/// when U[0,1) <= cr.
template <typename Scalar>
GenomeT<Scalar> ga_crossover(GenomeT<Scalar> individual, const GenomeT<Scalar>& partner, double cr, RandomStream& rng) {
    if (individual.size() != partner.size())
        throw DimensionError("individual and partner must have equal length");
    for (Eigen::Index j = 0; j < individual.size(); ++j)
        if (rng.uniform() <= cr)
            individual(j) = partner(j);
    return individual;
}

/// Each gene, with probability p_m, becomes a draw from U(pop_min, pop_max).
template <typename Scalar>
GenomeT<Scalar> mutate_substitution(GenomeT<Scalar> genome, double p_m, double pop_min, double pop_max,
                                    RandomStream& rng) {
    for (Eigen::Index j = 0; j < genome.size(); ++j)
        if (rng.uniform() < p_m)
            genome(j) = Scalar(rng.uniform(pop_min, pop_max));
    return genome;
}

/// Walks genes in index order; each, with probability p_m, swaps places with
/// a uniformly drawn gene of the same genome (possibly itself).
template <typename Scalar>
GenomeT<Scalar> mutate_interchange(GenomeT<Scalar> genome, double p_m, RandomStream& rng) {
    const auto n = genome.size();
    if (n < 2)
        return genome;
    for (Eigen::Index j = 0; j < n; ++j)
        if (rng.uniform() < p_m)
            std::swap(genome(j), genome(static_cast<Eigen::Index>(rng.index(static_cast<std::uint64_t>(n)))));
    return genome;
}

}  // namespace evomlp::ga

#endif  // EVOMLP_GA_HPP
