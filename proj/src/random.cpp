#include "evomlp/random.hpp"

#include <cmath>
#include <numbers>

namespace evomlp {

std::uint64_t RandomStream::index(std::uint64_t n) {
    // Largest multiple of n representable; draws at or above it are rejected.
    const std::uint64_t limit = max() - (max() % n + 1) % n;
    std::uint64_t x = engine_();
    while (x > limit)
        x = engine_();
    return x % n;
}

double RandomStream::normal() {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RandomStream rng_stream(std::uint64_t master_seed, std::uint64_t generation,
                        std::uint64_t member_index, Purpose purpose) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(master_seed), hi(master_seed), lo(generation), hi(generation),
                      lo(member_index), hi(member_index), static_cast<std::uint32_t>(purpose)};
    return RandomStream(seq);
}

}  // namespace evomlp
