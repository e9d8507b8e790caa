#ifndef EVOMLP_DE_HPP
#define EVOMLP_DE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evomlp/error.hpp"
#include "evomlp/mlp.hpp"
#include "evomlp/random.hpp"

namespace evomlp::de {

enum class Strategy { Rand1, Rand2, Best1, Best2, CurrentToBest };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

struct Params {
    Strategy strategy = Strategy::Rand1;
    double f_scale = 0.8;
    double cr = 0.9;

    std::vector<std::string> check() const;
};

/// Smallest population each strategy accepts.
constexpr std::size_t min_population(Strategy s) {
    return (s == Strategy::Rand2 || s == Strategy::Best2) ? 6 : 4;
}

/// Number of distinct partner indices a strategy consumes.
constexpr std::size_t partners_needed(Strategy s) {
    switch (s) {
    case Strategy::Rand1:
    case Strategy::CurrentToBest:
        return 3;
    case Strategy::Best1:
        return 2;
    case Strategy::Best2:
        return 4;
    case Strategy::Rand2:
        return 5;
    }
    return 5;
}

/// `count` (at most 5) pairwise-distinct indices in [0, np), all different
/// from `target`, drawn by rejection. Unused trailing slots hold np.
inline std::array<std::size_t, 5> draw_indices(std::size_t np, std::size_t target, std::size_t count,
                                               RandomStream& rng) {
    if (count + 1 > np)
        throw ValidationError("population of " + std::to_string(np) + " is too small for " + std::to_string(count) +
                              " distinct partners");
    std::array<std::size_t, 5> r;
    r.fill(np);
    for (std::size_t k = 0; k < count; ++k) {
        for (;;) {
            const auto c = static_cast<std::size_t>(rng.index(np));
            bool clash = c == target;
            for (std::size_t q = 0; q < k && !clash; ++q)
                clash = r[q] == c;
            if (!clash) {
                r[k] = c;
                break;
            }
        }
    }
    return r;
}

/// Donor from explicit partner indices r (r[0] is r_1).
template <typename Scalar>
GenomeT<Scalar> donor_from(Strategy strategy, std::span<const GenomeT<Scalar>> population, std::size_t target,
                           const GenomeT<Scalar>& global_best, Scalar f, const std::array<std::size_t, 5>& r) {
    const auto& x = population;
    switch (strategy) {
    case Strategy::Rand1:
        return x[r[0]] + f * (x[r[1]] - x[r[2]]);
    case Strategy::Rand2:
        return x[r[0]] + f * (x[r[1]] - x[r[2]]) + f * (x[r[3]] - x[r[4]]);
    case Strategy::Best1:
        return global_best + f * (x[r[0]] - x[r[1]]);
    case Strategy::Best2:
        return global_best + f * (x[r[0]] - x[r[1]]) + f * (x[r[2]] - x[r[3]]);
    case Strategy::CurrentToBest:
        return x[target] + f * (global_best - x[r[0]]) + f * (x[r[1]] - x[r[2]]);
    }
    return x[target];
}

/// Donor vector for `target` under `strategy`, partners drawn from `rng`.
template <typename Scalar>
GenomeT<Scalar> donor(Strategy strategy, std::span<const GenomeT<Scalar>> population, std::size_t target,
                      const GenomeT<Scalar>& global_best, Scalar f, RandomStream& rng) {
    const auto np = population.size();
    if (np < min_population(strategy))
        throw ValidationError("DE/" + std::string(to_string(strategy)) + " needs a population of at least " +
                              std::to_string(min_population(strategy)) + " (got " + std::to_string(np) + ")");
    const auto r = draw_indices(np, target, partners_needed(strategy), rng);
    return donor_from<Scalar>(strategy, population, target, global_best, f, r);
}

/// Per component: donor gene if U[0,1) <= cr, else target gene.
template <typename Scalar>
GenomeT<Scalar> binomial_crossover(const GenomeT<Scalar>& target, const GenomeT<Scalar>& donor_vec, double cr,
                                   RandomStream& rng) {
    if (target.size() != donor_vec.size())
        throw DimensionError("target and donor must have equal length");
    GenomeT<Scalar> trial = target;
    for (Eigen::Index j = 0; j < trial.size(); ++j)
        if (rng.uniform() <= cr)
            trial(j) = donor_vec(j);
    return trial;
}

template <typename Scalar>
struct Selection {
    GenomeT<Scalar> survivor;
    bool replaced;
};

/// Greedy survivor choice; the trial must be strictly fitter.
template <typename Scalar>
Selection<Scalar> de_select(const GenomeT<Scalar>& target, const GenomeT<Scalar>& trial, double target_fitness,
                            double trial_fitness) {
    if (trial_fitness > target_fitness)
        return {trial, true};
    return {target, false};
}

}  // namespace evomlp::de

#endif  // EVOMLP_DE_HPP
