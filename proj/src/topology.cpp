#include "entroute/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace entroute {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max();

struct AdjacencyEntry {
    NodeId from;
    NodeId to;
    LinkIndex link;
};

void build_adjacency(std::size_t node_count, const std::vector<Link>& links,
                     std::vector<std::size_t>& offsets, std::vector<NodeId>& adjacency,
                     std::vector<LinkIndex>& adjacency_links) {
    std::vector<AdjacencyEntry> entries;
    entries.reserve(links.size() * 2);
    for (LinkIndex i = 0; i < links.size(); ++i) {
        entries.push_back({links[i].a, links[i].b, i});
        entries.push_back({links[i].b, links[i].a, i});
    }
    std::sort(entries.begin(), entries.end(), [](const AdjacencyEntry& x, const AdjacencyEntry& y) {
        return x.from != y.from ? x.from < y.from : x.to < y.to;
    });

    offsets.assign(node_count + 1, 0);
    adjacency.resize(entries.size());
    adjacency_links.resize(entries.size());
    for (const AdjacencyEntry& e : entries) {
        ++offsets[e.from + 1];
    }
    for (std::size_t u = 0; u < node_count; ++u) {
        offsets[u + 1] += offsets[u];
    }
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const AdjacencyEntry& e : entries) {
        adjacency[cursor[e.from]] = e.to;
        adjacency_links[cursor[e.from]] = e.link;
        ++cursor[e.from];
    }
}

} // namespace

Topology Topology::line(int links) {
    if (links < 1) {
        throw std::invalid_argument("line topology needs at least one link");
    }
    Topology topo;
    topo.kind_ = TopologyKind::Line;
    topo.size_ = links;
    topo.links_.reserve(static_cast<std::size_t>(links));
    for (int i = 0; i < links; ++i) {
        topo.links_.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
    }
    build_adjacency(static_cast<std::size_t>(links) + 1, topo.links_, topo.offsets_,
                    topo.adjacency_, topo.adjacency_links_);
    return topo;
}

Topology Topology::grid(int side) {
    if (side < 2) {
        throw std::invalid_argument("grid topology needs side >= 2");
    }
    Topology topo;
    topo.kind_ = TopologyKind::Grid;
    topo.size_ = side;
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const NodeId u = static_cast<NodeId>(r * side + c);
            if (c + 1 < side) {
                topo.links_.push_back({u, u + 1});
            }
            if (r + 1 < side) {
                topo.links_.push_back({u, u + static_cast<NodeId>(side)});
            }
        }
    }
    build_adjacency(static_cast<std::size_t>(side) * side, topo.links_, topo.offsets_,
                    topo.adjacency_, topo.adjacency_links_);
    return topo;
}

std::span<const NodeId> Topology::neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::span<const LinkIndex> Topology::neighbor_links(NodeId u) const {
    return {adjacency_links_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::optional<LinkIndex> Topology::link_between(NodeId u, NodeId v) const {
    auto nodes = neighbors(u);
    auto links = neighbor_links(u);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] == v) {
            return links[i];
        }
    }
    return std::nullopt;
}

int Topology::hop_distance(NodeId a, NodeId b) const {
    if (kind_ == TopologyKind::Line) {
        return std::abs(static_cast<int>(a) - static_cast<int>(b));
    }
    return std::abs(grid_row(a) - grid_row(b)) + std::abs(grid_col(a) - grid_col(b));
}

namespace {

/// Distances to `target` in the filtered graph, by BFS. Banned nodes keep
/// kUnreachable so the DFS below never steps into them.
std::vector<int> distances_to(const Topology& topo, NodeId target,
                              const std::vector<bool>& banned_node,
                              std::optional<LinkIndex> banned_link) {
    std::vector<int> dist(topo.node_count(), kUnreachable);
    std::vector<NodeId> frontier;
    if (!banned_node[target]) {
        dist[target] = 0;
        frontier.push_back(target);
    }
    int level = 0;
    std::vector<NodeId> next;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (NodeId u : frontier) {
            auto nbrs = topo.neighbors(u);
            auto nlinks = topo.neighbor_links(u);
            for (std::size_t i = 0; i < nbrs.size(); ++i) {
                const NodeId v = nbrs[i];
                if (banned_node[v] || dist[v] != kUnreachable) {
                    continue;
                }
                if (banned_link && nlinks[i] == *banned_link) {
                    continue;
                }
                dist[v] = level;
                next.push_back(v);
            }
        }
        frontier.swap(next);
    }
    return dist;
}

/// Lexicographic DFS over distance-decreasing moves. Because every step
/// strictly decreases the distance to the target, generated paths are
/// automatically simple and sorted by node sequence.
void enumerate_paths(const Topology& topo, NodeId current, NodeId target, int limit,
                     const std::vector<int>& dist, std::optional<LinkIndex> banned_link,
                     std::vector<NodeId>& stack, std::vector<Path>& out) {
    if (static_cast<int>(out.size()) >= limit) {
        return;
    }
    if (current == target) {
        out.push_back(topo.make_path(stack));
        return;
    }
    auto nbrs = topo.neighbors(current);
    auto nlinks = topo.neighbor_links(current);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const NodeId v = nbrs[i];
        if (dist[v] == kUnreachable || dist[v] != dist[current] - 1) {
            continue;
        }
        if (banned_link && nlinks[i] == *banned_link) {
            continue;
        }
        stack.push_back(v);
        enumerate_paths(topo, v, target, limit, dist, banned_link, stack, out);
        stack.pop_back();
        if (static_cast<int>(out.size()) >= limit) {
            return;
        }
    }
}

} // namespace

std::vector<Path> Topology::shortest_paths(NodeId s, NodeId d, int limit) const {
    return shortest_paths_filtered(s, d, limit, {}, std::nullopt);
}

std::vector<Path> Topology::shortest_paths_filtered(
    NodeId s, NodeId d, int limit, std::span<const NodeId> banned_nodes,
    std::optional<LinkIndex> banned_link) const {
    if (s == d) {
        throw std::invalid_argument("path request needs distinct source and destination");
    }
    if (s >= node_count() || d >= node_count()) {
        throw std::invalid_argument("path request references unknown node");
    }
    if (limit < 1) {
        return {};
    }
    std::vector<bool> banned(node_count(), false);
    for (NodeId u : banned_nodes) {
        banned[u] = true;
    }
    banned[s] = false;
    banned[d] = false;

    const std::vector<int> dist = distances_to(*this, d, banned, banned_link);
    if (dist[s] == kUnreachable) {
        return {};
    }
    std::vector<Path> out;
    std::vector<NodeId> stack{s};
    enumerate_paths(*this, s, d, limit, dist, banned_link, stack, out);
    return out;
}

Path Topology::make_path(std::span<const NodeId> nodes) const {
    if (nodes.size() < 2) {
        throw std::invalid_argument("a path needs at least two nodes");
    }
    Path path;
    path.nodes.assign(nodes.begin(), nodes.end());
    path.links.reserve(nodes.size() - 1);
    std::unordered_set<NodeId> seen;
    seen.insert(nodes[0]);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!seen.insert(nodes[i + 1]).second) {
            throw std::invalid_argument("path repeats a node");
        }
        auto link = link_between(nodes[i], nodes[i + 1]);
        if (!link) {
            throw std::invalid_argument("path steps between non-adjacent nodes");
        }
        path.links.push_back(*link);
    }
    return path;
}

bool node_disjoint_interior(const Path& lhs, const Path& rhs) {
    std::unordered_set<NodeId> shared_endpoints;
    for (NodeId u : {lhs.source(), lhs.dest()}) {
        if (u == rhs.source() || u == rhs.dest()) {
            shared_endpoints.insert(u);
        }
    }
    std::unordered_set<NodeId> left(lhs.nodes.begin(), lhs.nodes.end());
    for (NodeId u : rhs.nodes) {
        if (left.count(u) != 0 && shared_endpoints.count(u) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace entroute
