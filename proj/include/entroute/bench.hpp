#ifndef ENTROUTE_BENCH_HPP
#define ENTROUTE_BENCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "entroute/engine.hpp"
#include "entroute/routing.hpp"
#include "entroute/topology.hpp"

namespace entroute {

/// A batch of uniformly random source/destination pairs (resampled until
/// source != dest).
struct RequestSet {
    std::vector<Request> requests;
    std::uint64_t seed = 0;
};

RequestSet generate_requests(const Topology& topo, int count, RngStream& rng);

/// One benchmark point: a simulation configuration plus the algorithms to
/// compare. Every algorithm runs in both forwarding modes on paired
/// episode seeds.
struct BenchmarkSpec {
    SimConfig base;
    TopologyKind topology = TopologyKind::Grid;
    std::vector<Algorithm> algorithms{Algorithm::MG};
    int inner = 100; // episodes per request set
    int outer = 50;  // independent request sets
};

struct ModeStats {
    double atwt_mean = 0.0;
    double atwt_se = 0.0;
    double alwt_mean = 0.0;
    double alwt_se = 0.0;
    std::int64_t capped_episodes = 0;
};

struct AlgorithmResult {
    Algorithm algorithm = Algorithm::MG;
    ModeStats nopp;
    ModeStats opp;
    /// (NOPP - OPP) / NOPP on the paired means.
    double improvement_atwt = 0.0;
    double improvement_alwt = 0.0;
    std::int64_t excluded_pairs = 0;
};

struct BenchmarkReport {
    BenchmarkSpec spec;
    std::uint64_t master_seed = 0;
    std::vector<AlgorithmResult> results;
    /// False when more than 1% of episode pairs hit the slot cap.
    bool valid = true;
};

/// Runs the inner x outer averaging scheme: `outer` request sets, `inner`
/// episodes per set per (algorithm, mode), set means first, then the mean
/// of set means with its standard error. Episode seeds are shared between
/// the two modes (paired comparison). The report is a deterministic
/// function of (spec, master_seed) for any `jobs` count.
BenchmarkReport run_benchmark(const BenchmarkSpec& spec, std::uint64_t master_seed, int jobs = 1);

/// One report per spec, each with an independent top-level seed derived
/// from (master_seed, index).
std::vector<BenchmarkReport> sweep(const std::vector<BenchmarkSpec>& specs,
                                   std::uint64_t master_seed, int jobs = 1);

/// Shared worker pool helper: runs fn(0..total) over `jobs` threads with
/// results keyed by index, keeping any reduction order-independent.
void parallel_for_index(std::int64_t total, int jobs,
                        const std::function<void(std::int64_t)>& fn);

} // namespace entroute

#endif // ENTROUTE_BENCH_HPP
