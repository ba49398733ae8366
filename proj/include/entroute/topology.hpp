#ifndef ENTROUTE_TOPOLOGY_HPP
#define ENTROUTE_TOPOLOGY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace entroute {

using NodeId = std::uint32_t;
using LinkIndex = std::uint32_t;

/// Undirected link between two adjacent nodes, stored with a < b.
struct Link {
    NodeId a;
    NodeId b;
};

/// A simple path, kept both as the node sequence and the link sequence
/// (links[i] connects nodes[i] and nodes[i+1]).
struct Path {
    std::vector<NodeId> nodes;
    std::vector<LinkIndex> links;

    int length() const { return static_cast<int>(links.size()); }
    NodeId source() const { return nodes.front(); }
    NodeId dest() const { return nodes.back(); }

    bool operator==(const Path& other) const { return nodes == other.nodes; }
};

enum class TopologyKind { Line, Grid };

/// Immutable line or grid network. Nodes of a grid are numbered row-major;
/// adjacency lists are sorted ascending, so every traversal of the topology
/// is deterministic.
class Topology {
public:
    /// Line with `links` links, i.e. nodes 0..links. Endpoints are node 0
    /// and node `links`.
    static Topology line(int links);

    /// side x side mesh with horizontal and vertical links only.
    static Topology grid(int side);

    TopologyKind kind() const { return kind_; }
    /// The M of line(M) / grid(M).
    int size_parameter() const { return size_; }

    std::size_t node_count() const { return offsets_.size() - 1; }
    std::size_t link_count() const { return links_.size(); }

    const Link& link(LinkIndex index) const { return links_[index]; }

    /// Neighbor node ids of `u`, ascending.
    std::span<const NodeId> neighbors(NodeId u) const;
    /// Link indices parallel to neighbors(u).
    std::span<const LinkIndex> neighbor_links(NodeId u) const;

    std::optional<LinkIndex> link_between(NodeId u, NodeId v) const;

    /// Shortest-path length: |a-b| on a line, Manhattan distance on a grid.
    int hop_distance(NodeId a, NodeId b) const;

    /// Up to `limit` shortest paths from s to d, ordered lexicographically
    /// by node-index sequence. Throws std::invalid_argument when s == d.
    std::vector<Path> shortest_paths(NodeId s, NodeId d, int limit) const;

    /// Same enumeration restricted to a filtered graph: paths may not visit
    /// any node in `banned_nodes` (s and d themselves are always allowed)
    /// nor traverse `banned_link`. Path lengths are shortest within the
    /// filtered graph; returns empty when d is unreachable.
    std::vector<Path> shortest_paths_filtered(
        NodeId s, NodeId d, int limit, std::span<const NodeId> banned_nodes,
        std::optional<LinkIndex> banned_link) const;

    /// Builds a Path from a node sequence, validating adjacency and
    /// simplicity.
    Path make_path(std::span<const NodeId> nodes) const;

    int grid_row(NodeId u) const { return static_cast<int>(u) / size_; }
    int grid_col(NodeId u) const { return static_cast<int>(u) % size_; }

private:
    Topology() = default;

    TopologyKind kind_ = TopologyKind::Line;
    int size_ = 0;
    std::vector<Link> links_;
    // CSR adjacency: nodes' neighbor slices in [offsets_[u], offsets_[u+1]).
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adjacency_;
    std::vector<LinkIndex> adjacency_links_;
};

/// True when the two paths share no node except endpoints common to both
/// (for same-endpoint paths: nothing but source and destination).
bool node_disjoint_interior(const Path& lhs, const Path& rhs);

} // namespace entroute

#endif // ENTROUTE_TOPOLOGY_HPP
