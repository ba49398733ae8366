#include "entroute/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace entroute {

namespace {

// splitmix64; used for seed mixing only.
std::uint64_t mix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    std::uint64_t a = mix(state);
    state ^= stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL;
    std::uint64_t b = mix(state);
    engine_.seed(a ^ (b + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t RngStream::next_u64() {
    return engine_();
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) {
    return next_unit() < p;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("next_below: n must be positive");
    }
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % n;
}

std::int64_t RngStream::geometric(double p) {
    if (!(p > 0.0) || p > 1.0) {
        throw std::domain_error("geometric: p must be in (0, 1]");
    }
    if (p == 1.0) {
        next_u64(); // keep stream advancement uniform across p
        return 1;
    }
    const double u = next_unit();
    // Inversion: smallest t with 1 - (1-p)^t >= u.
    const double t = std::ceil(std::log1p(-u) / std::log1p(-p));
    if (t < 1.0) {
        return 1;
    }
    return static_cast<std::int64_t>(t);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    std::uint64_t state = master;
    std::uint64_t h = mix(state);
    for (std::uint64_t part : {a, b, c, d}) {
        state ^= part + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h ^= mix(state);
    }
    return h;
}

} // namespace entroute
