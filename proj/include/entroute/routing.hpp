#ifndef ENTROUTE_ROUTING_HPP
#define ENTROUTE_ROUTING_HPP

#include <map>
#include <string>
#include <vector>

#include "entroute/topology.hpp"

namespace entroute {

enum class Algorithm { MG, NL, QP };

std::string algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

/// Routing output consumed by the engine: one or more candidate primary
/// paths plus, per primary link, an optional detour between that link's
/// endpoints.
struct PathPlan {
    Algorithm algorithm = Algorithm::MG;
    std::vector<Path> primaries;
    std::map<LinkIndex, Path> recovery;
};

/// Modified Greedy: the single lexicographically-first shortest path.
PathPlan plan_mg(const Topology& topo, NodeId source, NodeId dest);

/// Nonoblivious Local: up to two node-disjoint shortest paths, picked
/// greedily in canonical enumeration order. The engine races their
/// triggers and commits to whichever fires first.
PathPlan plan_nl(const Topology& topo, NodeId source, NodeId dest);

/// QPASS/QCAST-style: one primary shortest path plus, for every primary
/// link, the shortest detour between its endpoints that avoids the link
/// itself (when one exists).
PathPlan plan_qp(const Topology& topo, NodeId source, NodeId dest);

PathPlan make_plan(Algorithm algorithm, const Topology& topo, NodeId source, NodeId dest);

} // namespace entroute

#endif // ENTROUTE_ROUTING_HPP
