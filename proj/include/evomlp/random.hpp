#ifndef EVOMLP_RANDOM_HPP
#define EVOMLP_RANDOM_HPP

#include <cstdint>
#include <random>

namespace evomlp {

/// What a stream is used for. Part of the stream key so that two consumers
/// inside the same (generation, member) slot never share draws.
enum class Purpose : std::uint32_t {
    Init = 1,
    PsoUpdate = 2,
    DeIndices = 3,
    DeCrossover = 4,
    GaSelection = 5,
    GaCrossover = 6,
    GaMutation = 7,
    GaReplacement = 8,
    Synthetic = 9,
    Test = 100,
};

/// Deterministic random stream. Uniform draws are built from raw 64-bit
/// engine output so the sequence is identical on every standard library.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::seed_seq& seq) : engine_(seq) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [low, high).
    double uniform(double low, double high) { return low + (high - low) * uniform(); }

    /// Uniform integer in [0, n), unbiased (rejection sampling). n must be > 0.
    std::uint64_t index(std::uint64_t n);

    /// Standard normal draw.
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Independent stream keyed by (seed, generation, member, purpose).
RandomStream rng_stream(std::uint64_t master_seed, std::uint64_t generation,
                        std::uint64_t member_index, Purpose purpose);

}  // namespace evomlp

#endif  // EVOMLP_RANDOM_HPP
