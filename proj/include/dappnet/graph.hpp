#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dappnet {

using NodeId = std::size_t;

/// Directed graph with positive edge weights; parallel edges collapse by
/// summing and self-loops are allowed. Node ids follow insertion order.
class WeightedDigraph {
public:
    using EdgeKey = std::pair<NodeId, NodeId>;

    NodeId add_node(std::string_view label);
    /// Adds `weight` to the (source, target) edge, creating nodes as needed.
    /// Weights must be positive.
    void add_edge(std::string_view source, std::string_view target, double weight = 1.0);
    void add_edge(NodeId source, NodeId target, double weight = 1.0);

    std::optional<NodeId> find(std::string_view label) const;
    const std::string& label(NodeId id) const { return labels_[id]; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::size_t node_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return labels_.empty(); }

    /// Edges ordered by (source id, target id).
    const std::map<EdgeKey, double>& edges() const { return edges_; }
    double weight(NodeId source, NodeId target) const;
    double total_weight() const;
    bool has_self_loop(NodeId id) const { return edges_.count({id, id}) > 0; }

    /// Subgraph on `keep` (ids of this graph) with labels preserved, in the
    /// order given.
    WeightedDigraph induced(const std::vector<NodeId>& keep) const;

    bool operator==(const WeightedDigraph& other) const;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::map<EdgeKey, double> edges_;
};

/// Undirected, unweighted view without self-loops or parallel edges.
/// Adjacency lists are sorted.
struct SimpleGraph {
    std::vector<std::vector<NodeId>> adj;

    explicit SimpleGraph(std::size_t n = 0) : adj(n) {}

    std::size_t node_count() const { return adj.size(); }
    std::size_t edge_count() const;
    std::size_t degree(NodeId v) const { return adj[v].size(); }
    bool has_edge(NodeId u, NodeId v) const;
    /// Adds u-v unless it is a loop or already present; keeps lists sorted.
    void add_edge(NodeId u, NodeId v);

    SimpleGraph induced(const std::vector<NodeId>& keep) const;
};

SimpleGraph simple_view(const WeightedDigraph& g);

} // namespace dappnet
