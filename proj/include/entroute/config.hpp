#ifndef ENTROUTE_CONFIG_HPP
#define ENTROUTE_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "entroute/bench.hpp"

namespace entroute {

/// Raised for malformed configuration files or overrides; the CLI maps it
/// to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inputs to the `analyze` command: closed-form and Monte-Carlo line
/// statistics over a lattice of (links, requests, p).
struct AnalyzeConfig {
    std::vector<int> links{5};
    std::vector<int> requests{1};
    std::vector<double> p{0.5};
    int trials = 1000;
    double tolerance = 1e-10;
};

/// Inputs to the `rate` command.
struct RateConfig {
    std::vector<int> links{20};
    std::vector<double> p{0.5};
    int horizon = 500;
    int trials = 1000;
    /// "curves" emits the four rate curves; "trajectories" emits
    /// per-trial delivery paths instead.
    std::string output = "curves";
    int trajectories = 20;
};

/// Inputs to `simulate` (single spec) and `sweep` (base spec + axis).
struct SimulateConfig {
    BenchmarkSpec spec;
};

struct SweepConfig {
    BenchmarkSpec base;
    std::string axis_key;
    std::vector<double> axis_values;

    std::vector<BenchmarkSpec> expand() const;
};

/// Loads the JSON config at `path`, applies `key=value` overrides (dotted
/// keys address nested sections), and validates the result.
AnalyzeConfig load_analyze_config(const std::string& path, const std::vector<std::string>& overrides);
RateConfig load_rate_config(const std::string& path, const std::vector<std::string>& overrides);
SimulateConfig load_simulate_config(const std::string& path, const std::vector<std::string>& overrides);
SweepConfig load_sweep_config(const std::string& path, const std::vector<std::string>& overrides);

} // namespace entroute

#endif // ENTROUTE_CONFIG_HPP
