#include "entroute/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace entroute {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using WideFloat = __float128;
#else
using WideFloat = long double;
#endif

void check_probability(double p) {
    if (p == 0.0) {
        throw std::domain_error("expected waiting time diverges at p = 0");
    }
    if (!(p > 0.0) || p > 1.0) {
        throw std::domain_error("probability must be in (0, 1]");
    }
}

constexpr double kSeriesCutoff = 1e-12;

} // namespace

double expected_generation_time(int links, double p) {
    check_probability(p);
    if (links < 1) {
        throw std::domain_error("need at least one link");
    }
    if (links == 1) {
        return 1.0 / p;
    }
    const double q = 1.0 - p;
    double total = 0.0;
    double q_pow = 1.0; // q^t
    for (;;) {
        const double term = 1.0 - std::pow(1.0 - q_pow, links);
        total += term;
        if (term < kSeriesCutoff) {
            break;
        }
        q_pow *= q;
    }
    return total;
}

double expected_generation_time_alternating(int links, double p) {
    check_probability(p);
    if (links < 1) {
        throw std::domain_error("need at least one link");
    }
    // Binomials up to C(M, k) via Pascal's rule in extended precision; the
    // alternating terms reach ~1e18 near M = 64, which double cannot cancel
    // accurately.
    std::vector<WideFloat> binomial(static_cast<std::size_t>(links) + 1, WideFloat(0));
    binomial[0] = WideFloat(1);
    for (int row = 1; row <= links; ++row) {
        for (int k = row; k >= 1; --k) {
            binomial[k] = binomial[k] + binomial[k - 1];
        }
    }
    const WideFloat q = WideFloat(1) - WideFloat(p);
    WideFloat sum = 0;
    WideFloat q_pow = 1; // q^k
    for (int k = 1; k <= links; ++k) {
        q_pow *= q;
        const WideFloat term = binomial[k] / (WideFloat(1) - q_pow);
        sum += (k % 2 == 1) ? term : -term;
    }
    return static_cast<double>(sum);
}

double expected_swap_position(int links, double p, double tol) {
    check_probability(p);
    if (links < 1) {
        throw std::domain_error("need at least one link");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("tolerance must be positive");
    }
    if (links == 1 || p == 1.0) {
        // A request is always at position one when generation finishes.
        return 1.0;
    }
    const double q = 1.0 - p;
    const double tail_budget = tol / links;
    double expectation = 0.0;
    for (int k = 1; k <= links; ++k) {
        const int exponent = links - k + 1;
        double probability = 0.0;
        double q_prev = std::pow(q, k - 1); // q^{i-1} at i = k
        for (;;) {
            // Tail of the inner series from the current i is bounded by
            // (M - k + 1) * q^{i-1}.
            if (exponent * q_prev < tail_budget) {
                break;
            }
            const double q_cur = q_prev * q;
            const double term = std::pow(1.0 - q_prev, k - 1) *
                                (std::pow(1.0 - q_cur, exponent) - std::pow(1.0 - q_prev, exponent));
            probability += term;
            q_prev = q_cur;
        }
        expectation += probability;
    }
    return expectation;
}

namespace {

/// Per-trial pipeline pass: streams one generation matrix column by column
/// (request by request) and folds it into integer delivery counters.
struct PipelineAccumulator {
    std::vector<std::int64_t> delivered;         // sum over trials of N_t
    std::vector<std::int64_t> delivered_squared; // sum of N_t^2
    std::vector<std::int64_t> delivered_nonopp;  // sum of N^up_t
    std::vector<std::int64_t> delivered_depth0;  // sum of N^low_t
    std::vector<std::int64_t> wait_sum;          // sum of W_n, n = 1..horizon

    explicit PipelineAccumulator(int horizon)
        : delivered(horizon + 1, 0),
          delivered_squared(horizon + 1, 0),
          delivered_nonopp(horizon + 1, 0),
          delivered_depth0(horizon + 1, 0),
          wait_sum(horizon + 1, 0) {}

    void merge(const PipelineAccumulator& other) {
        for (std::size_t t = 0; t < delivered.size(); ++t) {
            delivered[t] += other.delivered[t];
            delivered_squared[t] += other.delivered_squared[t];
            delivered_nonopp[t] += other.delivered_nonopp[t];
            delivered_depth0[t] += other.delivered_depth0[t];
            wait_sum[t] += other.wait_sum[t];
        }
    }
};

void run_pipeline_trial(int links, double p, int horizon, RngStream& rng,
                        PipelineAccumulator& acc) {
    // Running recursion state: opportunistic column, per-link sums, and the
    // non-opportunistic running total, all over the same samples.
    std::vector<std::int64_t> opp(links, 0);
    std::vector<std::int64_t> link_sum(links, 0);
    std::int64_t nonopp_total = 0;

    // Delivery step functions as count-by-threshold buckets.
    std::vector<std::int32_t> opp_jump(horizon + 2, 0);
    std::vector<std::int32_t> nonopp_jump(horizon + 2, 0);
    std::vector<std::int32_t> depth0_jump(horizon + 2, 0);

    for (int n = 1; n <= horizon; ++n) {
        std::int64_t running = 0;
        std::int64_t column_max = 0;
        std::int64_t depth0 = 0;
        for (int i = 0; i < links; ++i) {
            const std::int64_t t = rng.geometric(p);
            running = std::max(running, opp[i] + t);
            opp[i] = running;
            link_sum[i] += t;
            depth0 = std::max(depth0, link_sum[i]);
            column_max = std::max(column_max, t);
        }
        nonopp_total += column_max;

        const std::int64_t w_opp = opp[links - 1];
        if (w_opp <= horizon) {
            ++opp_jump[w_opp];
        }
        if (nonopp_total <= horizon) {
            ++nonopp_jump[nonopp_total];
        }
        if (depth0 <= horizon) {
            ++depth0_jump[depth0];
        }
        acc.wait_sum[n] += w_opp;
    }

    std::int64_t n_opp = 0;
    std::int64_t n_nonopp = 0;
    std::int64_t n_depth0 = 0;
    for (int t = 1; t <= horizon; ++t) {
        n_opp += opp_jump[t];
        n_nonopp += nonopp_jump[t];
        n_depth0 += depth0_jump[t];
        acc.delivered[t] += n_opp;
        acc.delivered_squared[t] += n_opp * n_opp;
        acc.delivered_nonopp[t] += n_nonopp;
        acc.delivered_depth0[t] += n_depth0;
    }
}

} // namespace

RateCurves estimate_rates(int links, double p, int horizon, int trials,
                          std::uint64_t seed, int jobs) {
    check_probability(p);
    if (links < 1 || horizon < 1 || trials < 1) {
        throw std::domain_error("estimate_rates needs positive links, horizon and trials");
    }
    jobs = std::max(1, jobs);

    PipelineAccumulator total(horizon);
    std::mutex merge_mutex;
    std::atomic<int> next_trial{0};

    auto worker = [&]() {
        PipelineAccumulator local(horizon);
        for (;;) {
            const int trial = next_trial.fetch_add(1);
            if (trial >= trials) {
                break;
            }
            RngStream rng(seed, static_cast<std::uint64_t>(trial));
            run_pipeline_trial(links, p, horizon, rng, local);
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        total.merge(local);
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (int j = 0; j < jobs; ++j) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    RateCurves curves;
    curves.horizon = horizon;
    curves.trials = trials;
    curves.rate.resize(horizon + 1, 0.0);
    curves.rate_lower.resize(horizon + 1, 0.0);
    curves.rate_upper.resize(horizon + 1, 0.0);
    curves.rate_wait_based.resize(horizon + 1, 0.0);
    curves.delivered_mean.resize(horizon + 1, 0.0);
    curves.delivered_se.resize(horizon + 1, 0.0);
    const double inv_trials = 1.0 / trials;
    for (int t = 1; t <= horizon; ++t) {
        const double mean = static_cast<double>(total.delivered[t]) * inv_trials;
        const double mean_sq = static_cast<double>(total.delivered_squared[t]) * inv_trials;
        const double variance = std::max(0.0, mean_sq - mean * mean);
        curves.delivered_mean[t] = mean;
        curves.delivered_se[t] = trials > 1 ? std::sqrt(variance / (trials - 1)) : 0.0;
        curves.rate[t] = mean / t;
        curves.rate_lower[t] = static_cast<double>(total.delivered_nonopp[t]) * inv_trials / t;
        curves.rate_upper[t] = static_cast<double>(total.delivered_depth0[t]) * inv_trials / t;
        const double mean_wait = static_cast<double>(total.wait_sum[t]) * inv_trials;
        curves.rate_wait_based[t] = mean_wait > 0.0 ? t / mean_wait : 0.0;
    }
    return curves;
}

std::vector<std::int64_t> sample_delivery_trajectory(int links, double p, int horizon,
                                                     RngStream& rng) {
    check_probability(p);
    if (links < 1 || horizon < 1) {
        throw std::domain_error("trajectory needs positive links and horizon");
    }
    std::vector<std::int64_t> opp(links, 0);
    std::vector<std::int32_t> jump(horizon + 2, 0);
    for (int n = 1; n <= horizon; ++n) {
        std::int64_t running = 0;
        for (int i = 0; i < links; ++i) {
            running = std::max(running, opp[i] + rng.geometric(p));
            opp[i] = running;
        }
        if (opp[links - 1] <= horizon) {
            ++jump[opp[links - 1]];
        } else {
            break; // waiting times only grow with n
        }
    }
    std::vector<std::int64_t> trajectory(horizon + 1, 0);
    std::int64_t count = 0;
    for (int t = 1; t <= horizon; ++t) {
        count += jump[t];
        trajectory[t] = count;
    }
    return trajectory;
}

} // namespace entroute
