#include "entroute/routing.hpp"

#include <stdexcept>

namespace entroute {

std::string algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::MG:
        return "MG";
    case Algorithm::NL:
        return "NL";
    case Algorithm::QP:
        return "QP";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "MG") {
        return Algorithm::MG;
    }
    if (name == "NL") {
        return Algorithm::NL;
    }
    if (name == "QP") {
        return Algorithm::QP;
    }
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

Path first_shortest(const Topology& topo, NodeId source, NodeId dest) {
    auto paths = topo.shortest_paths(source, dest, 1);
    if (paths.empty()) {
        throw std::invalid_argument("no path between requested nodes");
    }
    return paths.front();
}

} // namespace

PathPlan plan_mg(const Topology& topo, NodeId source, NodeId dest) {
    PathPlan plan;
    plan.algorithm = Algorithm::MG;
    plan.primaries.push_back(first_shortest(topo, source, dest));
    return plan;
}

PathPlan plan_nl(const Topology& topo, NodeId source, NodeId dest) {
    PathPlan plan;
    plan.algorithm = Algorithm::NL;
    Path first = first_shortest(topo, source, dest);

    // The first path node-disjoint from `first` in enumeration order is the
    // lexicographically smallest shortest path avoiding its interior nodes.
    std::vector<NodeId> interior(first.nodes.begin() + 1, first.nodes.end() - 1);
    if (!interior.empty()) {
        auto disjoint = topo.shortest_paths_filtered(source, dest, 1, interior, std::nullopt);
        if (!disjoint.empty() && disjoint.front().length() == first.length()) {
            plan.primaries.push_back(first);
            plan.primaries.push_back(std::move(disjoint.front()));
            return plan;
        }
    }
    plan.primaries.push_back(std::move(first));
    return plan;
}

PathPlan plan_qp(const Topology& topo, NodeId source, NodeId dest) {
    PathPlan plan;
    plan.algorithm = Algorithm::QP;
    plan.primaries.push_back(first_shortest(topo, source, dest));
    for (LinkIndex link : plan.primaries.front().links) {
        const Link& endpoints = topo.link(link);
        auto detours = topo.shortest_paths_filtered(endpoints.a, endpoints.b, 1, {}, link);
        if (!detours.empty()) {
            plan.recovery.emplace(link, std::move(detours.front()));
        }
    }
    return plan;
}

PathPlan make_plan(Algorithm algorithm, const Topology& topo, NodeId source, NodeId dest) {
    switch (algorithm) {
    case Algorithm::MG:
        return plan_mg(topo, source, dest);
    case Algorithm::NL:
        return plan_nl(topo, source, dest);
    case Algorithm::QP:
        return plan_qp(topo, source, dest);
    }
    throw std::invalid_argument("unknown algorithm");
}

} // namespace entroute
