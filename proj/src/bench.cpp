#include "entroute/bench.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace entroute {

RequestSet generate_requests(const Topology& topo, int count, RngStream& rng) {
    if (count < 1) {
        throw std::invalid_argument("request set needs at least one request");
    }
    RequestSet set;
    set.requests.reserve(count);
    const std::uint64_t nodes = topo.node_count();
    for (int i = 0; i < count; ++i) {
        NodeId source;
        NodeId dest;
        do {
            source = static_cast<NodeId>(rng.next_below(nodes));
            dest = static_cast<NodeId>(rng.next_below(nodes));
        } while (source == dest);
        set.requests.push_back({i, source, dest});
    }
    return set;
}

void parallel_for_index(std::int64_t total, int jobs,
                        const std::function<void(std::int64_t)>& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || total <= 1) {
        for (std::int64_t i = 0; i < total; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= total) {
                return;
            }
            fn(i);
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (int j = 0; j < jobs; ++j) {
        threads.emplace_back(worker);
    }
    for (auto& t : threads) {
        t.join();
    }
}

namespace {

struct EpisodeOutcome {
    bool capped_nopp = false;
    bool capped_opp = false;
    double atwt_nopp = 0.0;
    double atwt_opp = 0.0;
    double alwt_nopp = 0.0;
    double alwt_opp = 0.0;
};

struct SeriesStats {
    double mean = 0.0;
    double se = 0.0;
};

SeriesStats mean_and_se(const std::vector<double>& values) {
    SeriesStats stats;
    if (values.empty()) {
        return stats;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    stats.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - stats.mean;
            ss += d * d;
        }
        stats.se = std::sqrt(ss / (static_cast<double>(values.size()) - 1.0) /
                             static_cast<double>(values.size()));
    }
    return stats;
}

} // namespace

BenchmarkReport run_benchmark(const BenchmarkSpec& spec, std::uint64_t master_seed, int jobs) {
    spec.base.validate();
    if (spec.inner < 1 || spec.outer < 1) {
        throw std::invalid_argument("benchmark needs positive inner and outer counts");
    }
    if (spec.algorithms.empty()) {
        throw std::invalid_argument("benchmark needs at least one algorithm");
    }
    if (spec.base.requests < 1) {
        throw std::invalid_argument("benchmark needs at least one request");
    }

    const Topology topo = spec.topology == TopologyKind::Grid ? Topology::grid(spec.base.size)
                                                              : Topology::line(spec.base.size);

    // Request sets and plans are deterministic and shared across the inner
    // episodes of a set.
    std::vector<RequestSet> sets;
    sets.reserve(spec.outer);
    for (int o = 0; o < spec.outer; ++o) {
        RngStream rng(derive_seed(master_seed, 0x5e75, static_cast<std::uint64_t>(o)));
        sets.push_back(generate_requests(topo, spec.base.requests, rng));
    }
    std::vector<std::vector<std::vector<PathPlan>>> plans(spec.algorithms.size());
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        plans[a].resize(spec.outer);
        for (int o = 0; o < spec.outer; ++o) {
            plans[a][o].reserve(sets[o].requests.size());
            for (const Request& r : sets[o].requests) {
                plans[a][o].push_back(make_plan(spec.algorithms[a], topo, r.source, r.dest));
            }
        }
    }

    // Flat task list: (algorithm, outer, inner) -> one paired NOPP/OPP run.
    const std::int64_t per_algo = static_cast<std::int64_t>(spec.outer) * spec.inner;
    const std::int64_t total = per_algo * static_cast<std::int64_t>(spec.algorithms.size());
    std::vector<EpisodeOutcome> outcomes(total);

    parallel_for_index(total, jobs, [&](std::int64_t index) {
        const std::size_t a = static_cast<std::size_t>(index / per_algo);
        const std::int64_t rest = index % per_algo;
        const int o = static_cast<int>(rest / spec.inner);
        const int i = static_cast<int>(rest % spec.inner);

        // Paired seeds: identical for both modes of the same episode.
        const std::uint64_t episode_seed =
            derive_seed(master_seed, 0xe415, static_cast<std::uint64_t>(o),
                        static_cast<std::uint64_t>(i));

        EpisodeOutcome outcome;
        for (ForwardingMode mode :
             {ForwardingMode::NonOpportunistic, ForwardingMode::Opportunistic}) {
            SimConfig config = spec.base;
            config.algorithm = spec.algorithms[a];
            config.mode = mode;
            config.seed = episode_seed;
            EpisodeMetrics metrics = run_episode(config, topo, sets[o].requests, plans[a][o],
                                                 RngStream(episode_seed));
            const bool capped = !metrics.completed;
            if (mode == ForwardingMode::NonOpportunistic) {
                outcome.capped_nopp = capped;
                outcome.atwt_nopp = metrics.mean_total_waiting();
                outcome.alwt_nopp = metrics.mean_link_waiting();
            } else {
                outcome.capped_opp = capped;
                outcome.atwt_opp = metrics.mean_total_waiting();
                outcome.alwt_opp = metrics.mean_link_waiting();
            }
        }
        outcomes[index] = outcome;
    });

    BenchmarkReport report;
    report.spec = spec;
    report.master_seed = master_seed;

    std::int64_t total_pairs = 0;
    std::int64_t excluded_total = 0;
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        AlgorithmResult result;
        result.algorithm = spec.algorithms[a];
        std::vector<double> set_atwt_nopp;
        std::vector<double> set_atwt_opp;
        std::vector<double> set_alwt_nopp;
        std::vector<double> set_alwt_opp;
        for (int o = 0; o < spec.outer; ++o) {
            double sum_atwt_nopp = 0.0;
            double sum_atwt_opp = 0.0;
            double sum_alwt_nopp = 0.0;
            double sum_alwt_opp = 0.0;
            int used = 0;
            for (int i = 0; i < spec.inner; ++i) {
                const EpisodeOutcome& e =
                    outcomes[static_cast<std::int64_t>(a) * per_algo +
                             static_cast<std::int64_t>(o) * spec.inner + i];
                if (e.capped_nopp) {
                    ++result.nopp.capped_episodes;
                }
                if (e.capped_opp) {
                    ++result.opp.capped_episodes;
                }
                if (e.capped_nopp || e.capped_opp) {
                    // Drop the whole pair to keep the comparison paired.
                    ++result.excluded_pairs;
                    continue;
                }
                sum_atwt_nopp += e.atwt_nopp;
                sum_atwt_opp += e.atwt_opp;
                sum_alwt_nopp += e.alwt_nopp;
                sum_alwt_opp += e.alwt_opp;
                ++used;
            }
            if (used > 0) {
                set_atwt_nopp.push_back(sum_atwt_nopp / used);
                set_atwt_opp.push_back(sum_atwt_opp / used);
                set_alwt_nopp.push_back(sum_alwt_nopp / used);
                set_alwt_opp.push_back(sum_alwt_opp / used);
            }
        }
        const SeriesStats atwt_nopp = mean_and_se(set_atwt_nopp);
        const SeriesStats atwt_opp = mean_and_se(set_atwt_opp);
        const SeriesStats alwt_nopp = mean_and_se(set_alwt_nopp);
        const SeriesStats alwt_opp = mean_and_se(set_alwt_opp);
        result.nopp.atwt_mean = atwt_nopp.mean;
        result.nopp.atwt_se = atwt_nopp.se;
        result.nopp.alwt_mean = alwt_nopp.mean;
        result.nopp.alwt_se = alwt_nopp.se;
        result.opp.atwt_mean = atwt_opp.mean;
        result.opp.atwt_se = atwt_opp.se;
        result.opp.alwt_mean = alwt_opp.mean;
        result.opp.alwt_se = alwt_opp.se;
        if (atwt_nopp.mean > 0.0) {
            result.improvement_atwt = (atwt_nopp.mean - atwt_opp.mean) / atwt_nopp.mean;
        }
        if (alwt_nopp.mean > 0.0) {
            result.improvement_alwt = (alwt_nopp.mean - alwt_opp.mean) / alwt_nopp.mean;
        }
        total_pairs += per_algo;
        excluded_total += result.excluded_pairs;
        report.results.push_back(result);
    }
    report.valid = excluded_total * 100 <= total_pairs;
    return report;
}

std::vector<BenchmarkReport> sweep(const std::vector<BenchmarkSpec>& specs,
                                   std::uint64_t master_seed, int jobs) {
    if (specs.empty()) {
        throw std::invalid_argument("sweep needs at least one configuration");
    }
    std::vector<BenchmarkReport> reports;
    reports.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        reports.push_back(run_benchmark(specs[i], derive_seed(master_seed, i), jobs));
    }
    return reports;
}

} // namespace entroute
