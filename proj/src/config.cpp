#include "entroute/config.hpp"

#include <fstream>

#include "json.hpp"

namespace entroute {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    json document;
    try {
        in >> document;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    if (!document.is_object()) {
        throw ConfigError("config root must be an object: " + path);
    }
    return document;
}

void apply_overrides(json& document, const std::vector<std::string>& overrides) {
    for (const std::string& entry : overrides) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("override must look like key=value: " + entry);
        }
        const std::string key = entry.substr(0, eq);
        const std::string raw = entry.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw; // plain string
        }
        json* node = &document;
        std::size_t start = 0;
        for (;;) {
            const std::size_t dot = key.find('.', start);
            const std::string part = key.substr(start, dot - start);
            if (part.empty()) {
                throw ConfigError("override has an empty key segment: " + entry);
            }
            if (dot == std::string::npos) {
                (*node)[part] = value;
                break;
            }
            node = &(*node)[part];
            start = dot + 1;
        }
    }
}

double get_probability(const json& document, const std::string& key, double fallback) {
    if (!document.contains(key)) {
        return fallback;
    }
    if (!document[key].is_number()) {
        throw ConfigError(key + " must be a number");
    }
    return document[key].get<double>();
}

int get_int(const json& document, const std::string& key, int fallback) {
    if (!document.contains(key)) {
        return fallback;
    }
    if (!document[key].is_number_integer()) {
        throw ConfigError(key + " must be an integer");
    }
    return document[key].get<int>();
}

std::vector<int> get_int_list(const json& document, const std::string& key,
                              std::vector<int> fallback) {
    if (!document.contains(key)) {
        return fallback;
    }
    const json& node = document[key];
    std::vector<int> values;
    if (node.is_number_integer()) {
        values.push_back(node.get<int>());
        return values;
    }
    if (!node.is_array() || node.empty()) {
        throw ConfigError(key + " must be an integer or a non-empty array");
    }
    for (const json& item : node) {
        if (!item.is_number_integer()) {
            throw ConfigError(key + " entries must be integers");
        }
        values.push_back(item.get<int>());
    }
    return values;
}

std::vector<double> get_double_list(const json& document, const std::string& key,
                                    std::vector<double> fallback) {
    if (!document.contains(key)) {
        return fallback;
    }
    const json& node = document[key];
    std::vector<double> values;
    if (node.is_number()) {
        values.push_back(node.get<double>());
        return values;
    }
    if (!node.is_array() || node.empty()) {
        throw ConfigError(key + " must be a number or a non-empty array");
    }
    for (const json& item : node) {
        if (!item.is_number()) {
            throw ConfigError(key + " entries must be numbers");
        }
        values.push_back(item.get<double>());
    }
    return values;
}

void check_probability_list(const std::vector<double>& values, const std::string& key) {
    for (double p : values) {
        if (!(p > 0.0) || p > 1.0) {
            throw ConfigError(key + " entries must be in (0, 1]");
        }
    }
}

std::int64_t get_lifetime(const json& document) {
    if (!document.contains("lifetime")) {
        return kInfiniteLifetime;
    }
    const json& node = document["lifetime"];
    if (node.is_string() && node.get<std::string>() == "inf") {
        return kInfiniteLifetime;
    }
    if (!node.is_number_integer() || node.get<std::int64_t>() < 1) {
        throw ConfigError("lifetime must be a positive integer or \"inf\"");
    }
    return node.get<std::int64_t>();
}

BenchmarkSpec parse_spec(const json& document) {
    BenchmarkSpec spec;
    spec.base.p_gen = get_probability(document, "p_gen", spec.base.p_gen);
    spec.base.p_swap = get_probability(document, "p_swap", spec.base.p_swap);
    spec.base.lifetime = get_lifetime(document);
    spec.base.requests = get_int(document, "requests", 20);
    spec.base.size = get_int(document, "m", 5);
    spec.base.degree = get_int(document, "k", 1);
    spec.base.slot_cap = get_int(document, "slot_cap", 1'000'000);
    spec.inner = get_int(document, "inner", 100);
    spec.outer = get_int(document, "outer", 50);

    if (document.contains("topology")) {
        const std::string kind = document["topology"].get<std::string>();
        if (kind == "grid") {
            spec.topology = TopologyKind::Grid;
        } else if (kind == "line") {
            spec.topology = TopologyKind::Line;
        } else {
            throw ConfigError("topology must be \"grid\" or \"line\"");
        }
    }

    if (document.contains("algorithms")) {
        if (!document["algorithms"].is_array() || document["algorithms"].empty()) {
            throw ConfigError("algorithms must be a non-empty array");
        }
        spec.algorithms.clear();
        for (const json& name : document["algorithms"]) {
            if (!name.is_string()) {
                throw ConfigError("algorithm names must be strings");
            }
            try {
                spec.algorithms.push_back(parse_algorithm(name.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }

    try {
        spec.base.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (spec.inner < 1 || spec.outer < 1) {
        throw ConfigError("inner and outer must be positive");
    }
    if (spec.topology == TopologyKind::Grid && spec.base.size < 2) {
        throw ConfigError("grid topology needs m >= 2");
    }
    if (spec.base.size < 1) {
        throw ConfigError("m must be positive");
    }
    return spec;
}

} // namespace

std::vector<BenchmarkSpec> SweepConfig::expand() const {
    std::vector<BenchmarkSpec> specs;
    specs.reserve(axis_values.size());
    for (double value : axis_values) {
        BenchmarkSpec spec = base;
        if (axis_key == "p_gen") {
            spec.base.p_gen = value;
        } else if (axis_key == "p_swap") {
            spec.base.p_swap = value;
        } else if (axis_key == "lifetime") {
            spec.base.lifetime = static_cast<std::int64_t>(value);
        } else if (axis_key == "requests") {
            spec.base.requests = static_cast<int>(value);
        } else if (axis_key == "m") {
            spec.base.size = static_cast<int>(value);
        } else if (axis_key == "k") {
            spec.base.degree = static_cast<int>(value);
        } else {
            throw ConfigError("unknown sweep axis: " + axis_key);
        }
        try {
            spec.base.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        specs.push_back(spec);
    }
    return specs;
}

AnalyzeConfig load_analyze_config(const std::string& path,
                                  const std::vector<std::string>& overrides) {
    json document = load_json(path);
    apply_overrides(document, overrides);
    AnalyzeConfig config;
    config.links = get_int_list(document, "m", config.links);
    config.requests = get_int_list(document, "n", config.requests);
    config.p = get_double_list(document, "p", config.p);
    config.trials = get_int(document, "trials", config.trials);
    config.tolerance = get_probability(document, "tolerance", config.tolerance);
    for (int m : config.links) {
        if (m < 1) {
            throw ConfigError("m entries must be positive");
        }
    }
    for (int n : config.requests) {
        if (n < 1) {
            throw ConfigError("n entries must be positive");
        }
    }
    check_probability_list(config.p, "p");
    if (config.trials < 1) {
        throw ConfigError("trials must be positive");
    }
    if (!(config.tolerance > 0.0)) {
        throw ConfigError("tolerance must be positive");
    }
    return config;
}

RateConfig load_rate_config(const std::string& path, const std::vector<std::string>& overrides) {
    json document = load_json(path);
    apply_overrides(document, overrides);
    RateConfig config;
    config.links = get_int_list(document, "m", config.links);
    config.p = get_double_list(document, "p", config.p);
    config.horizon = get_int(document, "horizon", config.horizon);
    config.trials = get_int(document, "trials", config.trials);
    config.trajectories = get_int(document, "trajectories", config.trajectories);
    if (document.contains("output")) {
        config.output = document["output"].get<std::string>();
    }
    for (int m : config.links) {
        if (m < 1) {
            throw ConfigError("m entries must be positive");
        }
    }
    check_probability_list(config.p, "p");
    if (config.horizon < 1 || config.trials < 1 || config.trajectories < 1) {
        throw ConfigError("horizon, trials and trajectories must be positive");
    }
    if (config.output != "curves" && config.output != "trajectories") {
        throw ConfigError("output must be \"curves\" or \"trajectories\"");
    }
    return config;
}

SimulateConfig load_simulate_config(const std::string& path,
                                    const std::vector<std::string>& overrides) {
    json document = load_json(path);
    apply_overrides(document, overrides);
    SimulateConfig config;
    config.spec = parse_spec(document);
    return config;
}

SweepConfig load_sweep_config(const std::string& path,
                              const std::vector<std::string>& overrides) {
    json document = load_json(path);
    apply_overrides(document, overrides);
    if (!document.contains("base") || !document["base"].is_object()) {
        throw ConfigError("sweep config needs a \"base\" section");
    }
    if (!document.contains("axis") || !document["axis"].is_object()) {
        throw ConfigError("sweep config needs an \"axis\" section");
    }
    SweepConfig config;
    config.base = parse_spec(document["base"]);
    const json& axis = document["axis"];
    if (!axis.contains("key") || !axis["key"].is_string()) {
        throw ConfigError("axis needs a string \"key\"");
    }
    config.axis_key = axis["key"].get<std::string>();
    config.axis_values = get_double_list(axis, "values", {});
    if (config.axis_values.empty()) {
        throw ConfigError("axis needs non-empty \"values\"");
    }
    config.expand(); // validates the axis key and resulting configs
    return config;
}

} // namespace entroute
