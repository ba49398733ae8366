#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "entroute/bench.hpp"

using namespace entroute;

namespace {

bool same_stats(const ModeStats& a, const ModeStats& b) {
    return a.atwt_mean == b.atwt_mean && a.atwt_se == b.atwt_se && a.alwt_mean == b.alwt_mean &&
           a.alwt_se == b.alwt_se && a.capped_episodes == b.capped_episodes;
}

bool same_report(const BenchmarkReport& a, const BenchmarkReport& b) {
    if (a.results.size() != b.results.size() || a.valid != b.valid) {
        return false;
    }
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        const AlgorithmResult& x = a.results[i];
        const AlgorithmResult& y = b.results[i];
        if (x.algorithm != y.algorithm || !same_stats(x.nopp, y.nopp) ||
            !same_stats(x.opp, y.opp) || x.improvement_atwt != y.improvement_atwt ||
            x.improvement_alwt != y.improvement_alwt || x.excluded_pairs != y.excluded_pairs) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("request generation: deterministic, never self-addressed, uniform") {
    const Topology grid = Topology::grid(5);
    RngStream a(21);
    RngStream b(21);
    const RequestSet first = generate_requests(grid, 50, a);
    const RequestSet second = generate_requests(grid, 50, b);
    REQUIRE(first.requests.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(first.requests[i].source == second.requests[i].source);
        CHECK(first.requests[i].dest == second.requests[i].dest);
        CHECK(first.requests[i].source != first.requests[i].dest);
    }

    // Source frequencies across many draws: 1/25 within 3 standard errors.
    RngStream c(33);
    const int draws = 100000;
    std::vector<int> counts(grid.node_count(), 0);
    const RequestSet big = generate_requests(grid, draws, c);
    for (const Request& r : big.requests) {
        ++counts[r.source];
    }
    const double expectation = static_cast<double>(draws) / grid.node_count();
    const double se = std::sqrt(draws * (1.0 / 25.0) * (24.0 / 25.0));
    for (int count : counts) {
        CHECK(std::abs(count - expectation) <= 3.0 * se);
    }
}

TEST_CASE("deterministic single-episode benchmark has zero standard error") {
    BenchmarkSpec spec;
    spec.topology = TopologyKind::Line;
    spec.base.size = 3;
    spec.base.requests = 2;
    spec.base.p_gen = 1.0;
    spec.base.p_swap = 1.0;
    spec.algorithms = {Algorithm::MG};
    spec.inner = 1;
    spec.outer = 1;
    const BenchmarkReport report = run_benchmark(spec, 7);
    REQUIRE(report.results.size() == 1);
    CHECK(report.valid);
    CHECK(report.results[0].nopp.atwt_se == 0.0);
    CHECK(report.results[0].opp.atwt_se == 0.0);
    CHECK(report.results[0].nopp.atwt_mean > 0.0);
}

TEST_CASE("line benchmark with certain swaps: opportunism no worse per set") {
    BenchmarkSpec spec;
    spec.topology = TopologyKind::Line;
    spec.base.size = 5;
    spec.base.requests = 4;
    spec.base.p_gen = 0.5;
    spec.base.p_swap = 1.0;
    spec.algorithms = {Algorithm::MG};
    spec.inner = 40;
    spec.outer = 4;
    const BenchmarkReport report = run_benchmark(spec, 11);
    REQUIRE(report.results.size() == 1);
    const AlgorithmResult& result = report.results[0];
    CHECK(result.opp.atwt_mean < result.nopp.atwt_mean);
    const double expected_ratio =
        (result.nopp.atwt_mean - result.opp.atwt_mean) / result.nopp.atwt_mean;
    CHECK(result.improvement_atwt == doctest::Approx(expected_ratio));
    CHECK(result.improvement_atwt > 0.0);
}

TEST_CASE("capped episodes are excluded and flag the report") {
    BenchmarkSpec spec;
    spec.topology = TopologyKind::Line;
    spec.base.size = 2;
    spec.base.requests = 1;
    spec.base.p_gen = 1.0;
    spec.base.p_swap = 0.0; // two-link requests can never finish
    spec.base.slot_cap = 50;
    spec.algorithms = {Algorithm::MG};
    spec.inner = 3;
    spec.outer = 2;
    const BenchmarkReport report = run_benchmark(spec, 13);
    REQUIRE(report.results.size() == 1);
    // Requests between adjacent nodes still finish; full-span ones do not.
    CHECK(report.results[0].excluded_pairs > 0);
    CHECK_FALSE(report.valid);
}

TEST_CASE("reports are identical for any worker count") {
    BenchmarkSpec spec;
    spec.topology = TopologyKind::Grid;
    spec.base.size = 3;
    spec.base.requests = 4;
    spec.base.p_gen = 0.6;
    spec.base.p_swap = 0.8;
    spec.base.lifetime = 10;
    spec.base.slot_cap = 100000;
    spec.algorithms = {Algorithm::MG, Algorithm::NL, Algorithm::QP};
    spec.inner = 6;
    spec.outer = 3;
    const BenchmarkReport serial = run_benchmark(spec, 17, 1);
    const BenchmarkReport parallel = run_benchmark(spec, 17, 4);
    CHECK(same_report(serial, parallel));
}

TEST_CASE("both modes wait longer on bigger grids") {
    BenchmarkSpec spec;
    spec.topology = TopologyKind::Grid;
    spec.base.requests = 20;
    spec.base.p_gen = 0.8;
    spec.base.p_swap = 0.8;
    spec.base.lifetime = 30;
    spec.algorithms = {Algorithm::MG};
    spec.inner = 12;
    spec.outer = 6;

    BenchmarkSpec small = spec;
    small.base.size = 5;
    BenchmarkSpec large = spec;
    large.base.size = 10;
    const auto reports = sweep({small, large}, 41);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].results[0].opp.atwt_mean < reports[1].results[0].opp.atwt_mean);
    CHECK(reports[0].results[0].nopp.atwt_mean < reports[1].results[0].nopp.atwt_mean);
}

TEST_CASE("sweep derives per-config seeds and matches run_benchmark") {
    BenchmarkSpec spec;
    spec.topology = TopologyKind::Line;
    spec.base.size = 3;
    spec.base.requests = 2;
    spec.base.p_gen = 0.7;
    spec.base.p_swap = 1.0;
    spec.algorithms = {Algorithm::MG};
    spec.inner = 4;
    spec.outer = 2;

    const auto reports = sweep({spec}, 23);
    REQUIRE(reports.size() == 1);
    const BenchmarkReport direct = run_benchmark(spec, derive_seed(23, 0));
    CHECK(same_report(reports[0], direct));
}
