#pragma once

#include "dappnet/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dappnet {

/// Degree -> node count, with degree = in + out and a self-loop counting 2.
std::map<std::size_t, std::size_t> degree_stats(const WeightedDigraph& g);
std::vector<std::size_t> total_degrees(const WeightedDigraph& g);

/// m / (n (n - 1)) counting self-loops as edges, so values above 1 occur.
/// A single node has density 1 with a self-loop and 0 without.
double density(const WeightedDigraph& g);

/// Fraction of nodes whose only incident edges are self-loops.
double selfloop_only_ratio(const WeightedDigraph& g);

/// Connected components, largest first; ties keep the smaller first node
/// id first. Node ids inside each component are ascending.
std::vector<std::vector<NodeId>> components(const SimpleGraph& g);

/// Weak components of a directed graph.
std::vector<std::vector<NodeId>> components(const WeightedDigraph& g);

struct PathStats {
    std::size_t diameter = 0;
    double avg_path_length = 0.0;
    bool avg_defined = false; // false for a single node
};

/// Hop-count diameter and mean shortest path over ordered pairs of distinct
/// nodes. The graph must be connected (std::invalid_argument otherwise).
PathStats path_stats(const SimpleGraph& component);

/// Shortest-path betweenness normalized by (n - 1)(n - 2) / 2; all zeros
/// for n < 3.
std::vector<double> betweenness(const SimpleGraph& g);

/// Betweenness computed inside each connected component and normalized by
/// that component's size.
std::vector<double> betweenness_by_component(const SimpleGraph& g);

struct ClusteringResult {
    std::vector<double> local;
    double global = 0.0; // transitivity: 3 * triangles / connected triples
};

ClusteringResult clustering(const SimpleGraph& g);
std::vector<std::size_t> triangles_per_node(const SimpleGraph& g);

class CliqueBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bron-Kerbosch with pivoting. Each clique is sorted; cliques are in
/// discovery order. Throws CliqueBudgetExceeded past `budget` cliques.
std::vector<std::vector<NodeId>> maximal_cliques(const SimpleGraph& g, std::size_t budget = 1'000'000);

/// Size -> count over maximal cliques of size >= 3.
std::map<std::size_t, std::size_t> clique_size_histogram(const SimpleGraph& g, std::size_t budget = 1'000'000);

struct Partition {
    std::vector<std::size_t> community; // per node, renumbered 0.. in node order
    double modularity = 0.0;

    std::size_t community_count() const;
};

/// Multi-level Louvain on the undirected weighted view (both directions
/// summed, self-loops kept). The visiting order is a seeded permutation;
/// ties go to the lowest community id.
Partition louvain(const WeightedDigraph& g, std::uint64_t seed = 0);

/// Newman modularity of a partition of the same undirected weighted view.
double modularity(const WeightedDigraph& g, const std::vector<std::size_t>& community);

/// Spearman rank correlation with average ranks for ties; nullopt when a
/// side is constant or fewer than 2 pairs exist.
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);

} // namespace dappnet
