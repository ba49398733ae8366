#ifndef ENTROUTE_RNG_HPP
#define ENTROUTE_RNG_HPP

#include <cstdint>
#include <random>

namespace entroute {

/// Deterministic random stream keyed by (seed, stream id).
///
/// The same (seed, stream) pair always produces the same draw sequence,
/// independent of platform, which lets Monte-Carlo trials run in any order
/// (or in parallel) without changing results.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_unit();

    bool bernoulli(double p);

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n);

    /// Geometric on support {1, 2, ...}: number of Bernoulli(p) attempts
    /// up to and including the first success. Requires 0 < p <= 1.
    std::int64_t geometric(double p);

private:
    std::mt19937_64 engine_;
};

/// Stable seed derivation for nested experiment structure
/// (config index, outer set, episode, ...).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0,
                          std::uint64_t d = 0);

} // namespace entroute

#endif // ENTROUTE_RNG_HPP
