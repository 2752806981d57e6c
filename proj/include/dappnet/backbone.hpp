#pragma once

#include "dappnet/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dappnet {

enum class FilterMode { EitherDirection, OutOnly };

std::string to_string(FilterMode mode);
FilterMode filter_mode_from_string(const std::string& s);

/// Significance of one edge against a uniform split of a node's strength
/// over its `degree` edges: (1 - weight/strength)^(degree - 1). Degree-1
/// nodes have no null model and yield nullopt. Throws std::invalid_argument
/// for nonpositive inputs or weight > strength.
std::optional<double> edge_alpha(double weight, double strength, std::size_t degree);

struct EdgeSignificance {
    NodeId source = 0;
    NodeId target = 0;
    double p_out = 0.0;
    double p_in = 0.0;
    std::optional<double> alpha_out;
    std::optional<double> alpha_in;
};

/// Per-edge significance for every edge of g, in edge order. Self-loops
/// count once in their node's out-tally and once in its in-tally.
std::vector<EdgeSignificance> edge_significances(const WeightedDigraph& g);

struct BackboneResult {
    WeightedDigraph filtered;
    double retention_nodes = 0.0;
    double retention_edges = 0.0;
    double alpha_threshold = 0.0;
    std::size_t nodes_before = 0;
    std::size_t edges_before = 0;
};

/// Keeps edges with alpha below the threshold at their source (or, in
/// either-direction mode, at their target too). Degree-1 endpoints always
/// keep their edge. Nodes without surviving edges are dropped. Throws
/// std::invalid_argument for a threshold outside (0, 1).
BackboneResult filter_graph(const WeightedDigraph& g, double alpha_threshold,
                            FilterMode mode = FilterMode::EitherDirection);

} // namespace dappnet
