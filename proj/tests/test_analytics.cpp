#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "entroute/analytics.hpp"
#include "entroute/rng.hpp"

using namespace entroute;

namespace {

struct McEstimate {
    double mean;
    double se;
};

/// Monte-Carlo mean of the maximum of `links` geometric(p) draws.
McEstimate mc_max_of_geometrics(int links, double p, int trials, std::uint64_t seed) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        RngStream rng(seed, static_cast<std::uint64_t>(trial));
        std::int64_t w = 0;
        for (int i = 0; i < links; ++i) {
            w = std::max(w, rng.geometric(p));
        }
        sum += static_cast<double>(w);
        sum_sq += static_cast<double>(w) * static_cast<double>(w);
    }
    const double mean = sum / trials;
    const double var = std::max(0.0, sum_sq / trials - mean * mean);
    return {mean, std::sqrt(var / (trials - 1))};
}

/// Monte-Carlo mean of the request position when generation finishes: the
/// chain climbed one link per slot through whatever prefix was complete, so
/// the position is the smaller of the first index attaining the overall
/// maximum and the elapsed slots.
McEstimate mc_swap_position(int links, double p, int trials, std::uint64_t seed) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        RngStream rng(seed, static_cast<std::uint64_t>(trial));
        std::int64_t w = 0;
        int first_last_finisher = 1;
        for (int i = 0; i < links; ++i) {
            const std::int64_t t = rng.geometric(p);
            if (t > w) {
                w = t;
                first_last_finisher = i + 1;
            }
        }
        const double k =
            static_cast<double>(std::min<std::int64_t>(first_last_finisher, w));
        sum += k;
        sum_sq += k * k;
    }
    const double mean = sum / trials;
    const double var = std::max(0.0, sum_sq / trials - mean * mean);
    return {mean, std::sqrt(var / (trials - 1))};
}

} // namespace

TEST_CASE("expected generation time: one link is exactly 1/p") {
    for (double p : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        CHECK(expected_generation_time(1, p) == 1.0 / p);
    }
}

TEST_CASE("expected generation time: certain generation takes one slot") {
    for (int links : {1, 2, 5, 20}) {
        CHECK(expected_generation_time(links, 1.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("expected generation time: two fair links") {
    CHECK(expected_generation_time(2, 0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
    CHECK(expected_generation_time_alternating(2, 0.5) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("the two evaluation routes agree to 1e-9 relative up to M = 64") {
    for (int links : {1, 2, 3, 4, 8, 16, 31, 32, 48, 64}) {
        for (double p : {0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 0.9, 1.0}) {
            const double stable = expected_generation_time(links, p);
            const double alternating = expected_generation_time_alternating(links, p);
            CHECK(std::abs(stable - alternating) <= 1e-9 * std::abs(stable));
        }
    }
}

TEST_CASE("expected generation time matches Monte Carlo") {
    for (auto [links, p] : {std::pair{2, 0.5}, std::pair{5, 0.3}, std::pair{10, 0.7}}) {
        const McEstimate mc = mc_max_of_geometrics(links, p, 200000, 404);
        const double exact = expected_generation_time(links, p);
        CHECK(std::abs(exact - mc.mean) <= 4.0 * mc.se);
    }
}

TEST_CASE("expected generation time rejects bad probabilities") {
    CHECK_THROWS_AS(expected_generation_time(3, 0.0), std::domain_error);
    CHECK_THROWS_AS(expected_generation_time(3, -0.1), std::domain_error);
    CHECK_THROWS_AS(expected_generation_time(3, 1.5), std::domain_error);
    CHECK_THROWS_AS(expected_generation_time(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(expected_generation_time_alternating(3, 0.0), std::domain_error);
}

TEST_CASE("expected swap position: certain generation or a single link pin it at 1") {
    for (int links : {1, 2, 5, 10}) {
        CHECK(expected_swap_position(links, 1.0, 1e-10) == doctest::Approx(1.0));
    }
    for (double p : {0.1, 0.5, 0.9}) {
        CHECK(expected_swap_position(1, p, 1e-10) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("expected swap position: two fair links give 4/3") {
    // P(position >= 2) = P(the second link strictly finishes last) = 1/3.
    CHECK(expected_swap_position(2, 0.5, 1e-12) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("expected swap position matches Monte Carlo") {
    for (auto [links, p] : {std::pair{2, 0.5}, std::pair{5, 0.3}, std::pair{8, 0.7}}) {
        const McEstimate mc = mc_swap_position(links, p, 200000, 505);
        const double exact = expected_swap_position(links, p, 1e-12);
        CHECK(std::abs(exact - mc.mean) <= 4.0 * mc.se);
    }
}

TEST_CASE("expected swap position stays within [1, M]") {
    RngStream rng(3);
    for (int round = 0; round < 50; ++round) {
        const int links = 1 + static_cast<int>(rng.next_below(12));
        const double p = 0.05 + 0.95 * rng.next_unit();
        const double value = expected_swap_position(links, p, 1e-10);
        CHECK(value >= 1.0 - 1e-9);
        CHECK(value <= links + 1e-9);
    }
}

TEST_CASE("rate curves: certain generation delivers one request per slot") {
    const RateCurves curves = estimate_rates(4, 1.0, 50, 20, 42);
    for (int t = 1; t <= 50; ++t) {
        CHECK(curves.rate[t] == doctest::Approx(1.0));
        CHECK(curves.rate_lower[t] == doctest::Approx(1.0));
        CHECK(curves.rate_upper[t] == doctest::Approx(1.0));
        CHECK(curves.rate_wait_based[t] == doctest::Approx(1.0));
    }
}

TEST_CASE("rate curves: bounds sandwich the rate sample by sample") {
    const RateCurves curves = estimate_rates(10, 0.4, 200, 200, 77);
    for (int t = 1; t <= 200; ++t) {
        CHECK(curves.rate_lower[t] <= curves.rate[t] + 1e-12);
        CHECK(curves.rate[t] <= curves.rate_upper[t] + 1e-12);
        CHECK(curves.rate[t] >= 0.0);
        CHECK(curves.rate_upper[t] <= 1.0 + 1e-12);
    }
}

TEST_CASE("rate curves: identical for any worker count") {
    const RateCurves one = estimate_rates(8, 0.6, 120, 150, 31, 1);
    const RateCurves three = estimate_rates(8, 0.6, 120, 150, 31, 3);
    CHECK(one.rate == three.rate);
    CHECK(one.rate_lower == three.rate_lower);
    CHECK(one.rate_upper == three.rate_upper);
    CHECK(one.rate_wait_based == three.rate_wait_based);
    CHECK(one.delivered_mean == three.delivered_mean);
}

TEST_CASE("delivery expectation is superadditive (within noise)") {
    const RateCurves curves = estimate_rates(6, 0.5, 240, 400, 99);
    for (auto [t1, t2] : {std::pair{40, 60}, std::pair{80, 120}, std::pair{100, 140}}) {
        const double lhs = curves.delivered_mean[t1 + t2];
        const double rhs = curves.delivered_mean[t1] + curves.delivered_mean[t2];
        const double noise = 3.0 * (curves.delivered_se[t1 + t2] + curves.delivered_se[t1] +
                                    curves.delivered_se[t2]);
        CHECK(lhs >= rhs - noise);
    }
}

TEST_CASE("delivery trajectories: certain generation gives the identity") {
    RngStream rng(1);
    const auto trajectory = sample_delivery_trajectory(5, 1.0, 30, rng);
    for (int t = 1; t <= 30; ++t) {
        CHECK(trajectory[t] == t);
    }
}

TEST_CASE("delivery trajectories: monotone, bounded by t, deterministic") {
    for (int round = 0; round < 20; ++round) {
        RngStream rng(1000 + round);
        const auto trajectory = sample_delivery_trajectory(12, 0.35, 100, rng);
        for (int t = 1; t <= 100; ++t) {
            CHECK(trajectory[t] <= t);
            CHECK(trajectory[t] >= trajectory[t - 1]);
        }
        RngStream replay(1000 + round);
        CHECK(sample_delivery_trajectory(12, 0.35, 100, replay) == trajectory);
    }
}
