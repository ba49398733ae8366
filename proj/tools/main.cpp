// entroute: line-network waiting-time analytics and a slotted simulator for
// opportunistic entanglement routing, driven by JSON configs, emitting CSV.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entroute/analytics.hpp"
#include "entroute/bench.hpp"
#include "entroute/config.hpp"
#include "entroute/csv.hpp"
#include "entroute/waiting.hpp"

namespace {

using namespace entroute;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitExcluded = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file (JSON)")->required();
    cmd->add_option("--out", args.out_path, "output CSV path")->required();
    cmd->add_option("--seed", args.seed, "master seed");
    cmd->add_option("--jobs", args.jobs, "worker thread count")->check(CLI::PositiveNumber);
    cmd->add_option("--set", args.overrides, "override config values (key=value)");
}

int cmd_analyze(const CommonArgs& args) {
    const AnalyzeConfig config = load_analyze_config(args.config_path, args.overrides);
    CsvBuilder csv({"m", "n", "p", "statistic", "value"});

    std::size_t combo = 0;
    for (int m : config.links) {
        for (int n : config.requests) {
            for (double p : config.p) {
                auto row = [&](const std::string& statistic, double value) {
                    csv.begin_row().add(m).add(n).add(p).add(statistic).add(value);
                };
                row("expected_generation_time", expected_generation_time(m, p));
                row("expected_swap_position", expected_swap_position(m, p, config.tolerance));

                // Monte-Carlo means of the waiting-time family.
                std::vector<std::int64_t> sums(2 * static_cast<std::size_t>(m) + 1, 0);
                std::vector<std::vector<std::int64_t>> per_trial(config.trials);
                parallel_for_index(config.trials, args.jobs, [&](std::int64_t trial) {
                    RngStream rng(args.seed, derive_seed(0xa7a1, combo, trial));
                    per_trial[trial] =
                        waiting_time_spectrum(sample_generation_matrix(m, n, p, rng));
                });
                for (const auto& values : per_trial) {
                    for (std::size_t i = 0; i < values.size(); ++i) {
                        sums[i] += values[i];
                    }
                }
                for (int depth = 0; depth <= m; ++depth) {
                    row("spectrum_depth_" + std::to_string(depth),
                        static_cast<double>(sums[depth]) / config.trials);
                }
                for (int degree = 1; degree <= m; ++degree) {
                    row("spectrum_degree_" + std::to_string(degree),
                        static_cast<double>(sums[m + degree]) / config.trials);
                }
                ++combo;
            }
        }
    }
    csv.write(args.out_path);
    return kExitOk;
}

int cmd_rate(const CommonArgs& args) {
    const RateConfig config = load_rate_config(args.config_path, args.overrides);
    if (config.output == "trajectories") {
        CsvBuilder csv({"m", "p", "trial", "t", "delivered", "rate"});
        std::size_t combo = 0;
        for (int m : config.links) {
            for (double p : config.p) {
                for (int trial = 0; trial < config.trajectories; ++trial) {
                    RngStream rng(args.seed, derive_seed(0x7247, combo, trial));
                    const auto trajectory =
                        sample_delivery_trajectory(m, p, config.horizon, rng);
                    for (int t = 1; t <= config.horizon; ++t) {
                        csv.begin_row()
                            .add(m)
                            .add(p)
                            .add(trial)
                            .add(static_cast<std::int64_t>(t))
                            .add(trajectory[t])
                            .add(static_cast<double>(trajectory[t]) / t);
                    }
                }
                ++combo;
            }
        }
        csv.write(args.out_path);
        return kExitOk;
    }

    CsvBuilder csv({"m", "p", "t", "rate", "rate_lower", "rate_upper", "rate_wait_based"});
    std::size_t combo = 0;
    for (int m : config.links) {
        for (double p : config.p) {
            const RateCurves curves = estimate_rates(
                m, p, config.horizon, config.trials, derive_seed(args.seed, 0x7a7e, combo),
                args.jobs);
            for (int t = 1; t <= config.horizon; ++t) {
                csv.begin_row()
                    .add(m)
                    .add(p)
                    .add(static_cast<std::int64_t>(t))
                    .add(curves.rate[t])
                    .add(curves.rate_lower[t])
                    .add(curves.rate_upper[t])
                    .add(curves.rate_wait_based[t]);
            }
            ++combo;
        }
    }
    csv.write(args.out_path);
    return kExitOk;
}

void report_rows(CsvBuilder& csv, const BenchmarkReport& report) {
    const BenchmarkSpec& spec = report.spec;
    const std::string lifetime = spec.base.lifetime == kInfiniteLifetime
                                     ? "inf"
                                     : std::to_string(spec.base.lifetime);
    const std::string topology = spec.topology == TopologyKind::Grid ? "grid" : "line";
    for (const AlgorithmResult& result : report.results) {
        for (ForwardingMode mode :
             {ForwardingMode::NonOpportunistic, ForwardingMode::Opportunistic}) {
            const ModeStats& stats =
                mode == ForwardingMode::Opportunistic ? result.opp : result.nopp;
            csv.begin_row()
                .add(spec.base.p_gen)
                .add(spec.base.p_swap)
                .add(lifetime)
                .add(spec.base.requests)
                .add(spec.base.size)
                .add(spec.base.degree)
                .add(topology)
                .add(algorithm_name(result.algorithm))
                .add(mode_name(mode))
                .add(stats.atwt_mean)
                .add(stats.atwt_se)
                .add(stats.alwt_mean)
                .add(stats.alwt_se)
                .add(result.improvement_atwt)
                .add(result.improvement_alwt)
                .add(result.excluded_pairs);
        }
    }
}

const std::vector<std::string> kReportHeader = {
    "p_gen", "p_swap",   "lifetime", "requests",  "m",
    "k",     "topology", "algorithm", "mode",     "atwt_mean",
    "atwt_se", "alwt_mean", "alwt_se", "improvement", "alwt_improvement",
    "excluded_pairs"};

int cmd_simulate(const CommonArgs& args) {
    const SimulateConfig config = load_simulate_config(args.config_path, args.overrides);
    const BenchmarkReport report = run_benchmark(config.spec, args.seed, args.jobs);
    CsvBuilder csv(kReportHeader);
    report_rows(csv, report);
    csv.write(args.out_path);
    if (!report.valid) {
        std::cerr << "entroute: more than 1% of episode pairs hit the slot cap\n";
        return kExitExcluded;
    }
    return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
    const SweepConfig config = load_sweep_config(args.config_path, args.overrides);
    const std::vector<BenchmarkReport> reports = sweep(config.expand(), args.seed, args.jobs);
    CsvBuilder csv(kReportHeader);
    bool all_valid = true;
    for (const BenchmarkReport& report : reports) {
        report_rows(csv, report);
        all_valid = all_valid && report.valid;
    }
    csv.write(args.out_path);
    if (!all_valid) {
        std::cerr << "entroute: more than 1% of episode pairs hit the slot cap\n";
        return kExitExcluded;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement routing analytics and simulation"};
    app.require_subcommand(1);

    CommonArgs analyze_args;
    CLI::App* analyze = app.add_subcommand("analyze", "closed-form and Monte-Carlo line statistics");
    add_common(analyze, analyze_args);

    CommonArgs rate_args;
    CLI::App* rate = app.add_subcommand("rate", "transmission-rate curves and bounds");
    add_common(rate, rate_args);

    CommonArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "benchmark one configuration");
    add_common(simulate, simulate_args);

    CommonArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "benchmark a swept axis");
    add_common(sweep_cmd, sweep_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            return cmd_analyze(analyze_args);
        }
        if (rate->parsed()) {
            return cmd_rate(rate_args);
        }
        if (simulate->parsed()) {
            return cmd_simulate(simulate_args);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep_args);
        }
    } catch (const entroute::ConfigError& e) {
        std::cerr << "entroute: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "entroute: " << e.what() << "\n";
        return 1;
    }
    return kExitConfig;
}
