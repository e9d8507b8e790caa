#ifndef EVOMLP_PSO_HPP
#define EVOMLP_PSO_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "evomlp/error.hpp"
#include "evomlp/mlp.hpp"
#include "evomlp/random.hpp"

namespace evomlp::pso {

template <typename Scalar>
struct Particle {
    GenomeT<Scalar> position;
    GenomeT<Scalar> velocity;
    GenomeT<Scalar> personal_best;
    Scalar personal_best_fitness = 0;
    /// Relative improvement from the previous evaluation; drives the
    /// nonlinear inertia schedule. Zero before the first update.
    Scalar relative_improvement = 0;
};

struct ConstantInertia {
    double weight = 0.729;
};

struct LinearInertia {
    double start = 0.9;
    double end = 0.5;
};

struct NonlinearInertia {
    double start = 0.9;
    double end = 0.5;
};

using Inertia = std::variant<ConstantInertia, LinearInertia, NonlinearInertia>;

struct Params {
    double phi_p = 2.0;
    double phi_g = 2.0;
    Inertia inertia = LinearInertia{};

    /// Problems with the bounds, empty when valid.
    std::vector<std::string> check() const;
};

/// w(t) falling linearly from w0 at t = 0 to wT at t = t_max.
template <typename Scalar>
Scalar inertia_linear(std::size_t t, std::size_t t_max, Scalar w0, Scalar wT) {
    if (!(w0 > wT))
        throw ValidationError("linear inertia requires w(0) > w(T_max)");
    if (t_max == 0)
        return w0;
    return (w0 - wT) * Scalar(t_max - t) / Scalar(t_max) + wT;
}

/// (f(p) - f(x)) / (f(p) + f(x)); zero when both are zero.
template <typename Scalar>
Scalar relative_improvement(Scalar pbest_fitness, Scalar current_fitness) {
    const Scalar denom = pbest_fitness + current_fitness;
    if (denom == Scalar(0))
        return Scalar(0);
    return (pbest_fitness - current_fitness) / denom;
}

/// w0 + (wT - w0) * (e^m - 1) / (e^m + 1). Written with tanh(m/2), which is
/// the same ratio and stays finite for large m.
template <typename Scalar>
Scalar inertia_nonlinear(Scalar m, Scalar w0, Scalar wT) {
    using std::tanh;
    return w0 + (wT - w0) * tanh(m / Scalar(2));
}

/// Inertia weight for this particle at iteration t.
template <typename Scalar>
Scalar inertia_weight(const Inertia& schedule, const Particle<Scalar>& particle, std::size_t t, std::size_t t_max) {
    if (const auto* c = std::get_if<ConstantInertia>(&schedule))
        return Scalar(c->weight);
    if (const auto* l = std::get_if<LinearInertia>(&schedule))
        return inertia_linear(t, t_max, Scalar(l->start), Scalar(l->end));
    const auto& n = std::get<NonlinearInertia>(schedule);
    return inertia_nonlinear(particle.relative_improvement, Scalar(n.start), Scalar(n.end));
}

/// Velocity and position step:
///   v <- w v + U(0, phi_p) * (p_i - x) + U(0, phi_g) * (p_g - x);  x <- x + v
/// For each component j the stream yields the personal draw, then the global
/// draw. Fitness and bests are left to pso_post_evaluate.
template <typename Scalar>
Particle<Scalar> pso_update(Particle<Scalar> particle, const GenomeT<Scalar>& global_best, const Params& params,
                            std::size_t t, std::size_t t_max, RandomStream& rng) {
    const auto n = particle.position.size();
    if (particle.velocity.size() != n || particle.personal_best.size() != n || global_best.size() != n)
        throw DimensionError("particle vectors and global best must have equal length");

    const Scalar w = inertia_weight(params.inertia, particle, t, t_max);
    GenomeT<Scalar> r_p(n), r_g(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        r_p(j) = Scalar(params.phi_p * rng.uniform());
        r_g(j) = Scalar(params.phi_g * rng.uniform());
    }
    particle.velocity = w * particle.velocity + r_p.cwiseProduct(particle.personal_best - particle.position) +
                        r_g.cwiseProduct(global_best - particle.position);
    particle.position += particle.velocity;
    return particle;
}

/// Records the fitness of the current position: personal best moves on
/// strict improvement, then the relative improvement is recomputed.
template <typename Scalar>
Particle<Scalar> pso_post_evaluate(Particle<Scalar> particle, Scalar new_fitness) {
    if (new_fitness > particle.personal_best_fitness) {
        particle.personal_best = particle.position;
        particle.personal_best_fitness = new_fitness;
    }
    particle.relative_improvement = relative_improvement(particle.personal_best_fitness, new_fitness);
    return particle;
}

}  // namespace evomlp::pso

#endif  // EVOMLP_PSO_HPP
