#ifndef ENTROUTE_ANALYTICS_HPP
#define ENTROUTE_ANALYTICS_HPP

#include <cstdint>
#include <vector>

#include "entroute/rng.hpp"

namespace entroute {

/// Expected number of slots until all of M independent geometric(p) link
/// generations have succeeded (infinite lifetimes). Evaluated through the
/// tail-sum form sum_{t>=0} (1 - (1 - q^t)^M), truncated once the summand
/// drops below 1e-12; exact 1/p for a single link.
/// Throws std::domain_error for p outside (0, 1].
double expected_generation_time(int links, double p);

/// The same quantity evaluated through the inclusion-exclusion alternating
/// series sum_k C(M,k) (-1)^{k+1} / (1 - (1-p)^k), in extended precision so
/// the two routes can be cross-checked against each other at large M.
double expected_generation_time_alternating(int links, double p);

/// Expected position of a single end-to-end request at the moment all of
/// its M links have been generated, when it swaps one hop per slot as links
/// come up. Inner series truncated when the analytic geometric tail bound
/// falls below `tol`. Equals 1 when p = 1 or M = 1.
double expected_swap_position(int links, double p, double tol);

/// Monte-Carlo transmission-rate curves for the 1-opportunistic zero-swap-
/// time line pipeline with an infinite request backlog.
struct RateCurves {
    int horizon = 0;
    int trials = 0;
    /// E{N_t}/t: deliveries per slot under opportunistic forwarding.
    std::vector<double> rate;
    /// E{N^up_t}/t: the non-opportunistic (lower) rate bound.
    std::vector<double> rate_lower;
    /// E{N^low_t}/t: the search-depth-0 (upper) rate bound.
    std::vector<double> rate_upper;
    /// n/E{W_n}: the waiting-time-based rate.
    std::vector<double> rate_wait_based;
    /// E{N_t} and its standard error, for statistical checks.
    std::vector<double> delivered_mean;
    std::vector<double> delivered_se;
};

/// Estimates all four curves from `trials` independent pipelines. The three
/// delivery-count curves are computed from the same generation samples per
/// trial, so rate_lower <= rate <= rate_upper holds per sample, not just in
/// expectation. Aggregation uses integer accumulators: the result is
/// bit-identical for any `jobs` (worker) count.
RateCurves estimate_rates(int links, double p, int horizon, int trials,
                          std::uint64_t seed, int jobs = 1);

/// One sampled trajectory of cumulative deliveries N_t for t = 1..horizon.
/// Non-decreasing and bounded by t.
std::vector<std::int64_t> sample_delivery_trajectory(int links, double p, int horizon,
                                                     RngStream& rng);

} // namespace entroute

#endif // ENTROUTE_ANALYTICS_HPP
