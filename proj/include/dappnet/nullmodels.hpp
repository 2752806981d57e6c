#pragma once

#include "dappnet/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dappnet {

enum class PartitionSource { WeakComponents, Louvain };

std::string to_string(PartitionSource source);
PartitionSource partition_source_from_string(const std::string& s);

struct RandomizationConfig {
    std::uint64_t seed = 0;
    std::size_t n_realizations = 100;
    bool preserve_degree = false;
    PartitionSource partition_source = PartitionSource::WeakComponents;
    // Degree-preserving mode: successful swaps per block edge, and the
    // attempt cap as a multiple of the swap target.
    std::size_t swaps_per_edge = 10;
    std::size_t attempt_factor = 100;

    void validate() const;
};

/// Block id per node: weak components (largest first) or a Louvain
/// partition seeded from cfg.seed.
std::vector<std::size_t> make_partition(const WeightedDigraph& g, const RandomizationConfig& cfg);

/// One realization of the block-preserving null model on the undirected
/// simple view. Within each block the edges are redrawn: uniformly among
/// the block's node pairs, or by double-edge swaps when preserve_degree is
/// set. Cross-block edges and self-loops are copied unchanged.
///
/// The result has unit weights and one arc per undirected pair, pointing
/// from the lower to the higher node id. Labels match g.
WeightedDigraph block_preserving_rewire(const WeightedDigraph& g, const std::vector<std::size_t>& partition,
                                        const RandomizationConfig& cfg, std::uint64_t realization = 0);

/// Uniform simple graph with n nodes labelled "0".."n-1" and exactly m
/// undirected edges (stored as low -> high arcs). Throws
/// std::invalid_argument when m > n (n - 1) / 2.
WeightedDigraph uniform_random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

struct SmallWorldComparison {
    double real_avg_path = 0.0;
    double random_avg_path_mean = 0.0;
    double real_clustering = 0.0;
    double random_clustering_mean = 0.0;
    std::size_t nodes = 0; // largest component
    std::size_t edges = 0;
    std::size_t realizations = 0;
};

/// Compares the largest component against size-matched G(n, m) graphs
/// (path length and transitivity measured on each random graph's largest
/// component). nullopt when the largest component has fewer than
/// `min_nodes` nodes.
std::optional<SmallWorldComparison> small_world_comparison(const WeightedDigraph& g, const RandomizationConfig& cfg,
                                                           std::size_t min_nodes = 50);

struct BlockNullSummary {
    double original_clustering = 0.0;
    double null_clustering_mean = 0.0;
    double null_clustering_stderr = 0.0;
    // Spearman rank correlation of betweenness against local clustering;
    // nullopt when undefined.
    std::optional<double> original_rank_correlation;
    std::optional<double> null_rank_correlation_mean;
    std::size_t blocks = 0;
    std::size_t realizations = 0;
};

BlockNullSummary block_null_summary(const WeightedDigraph& g, const RandomizationConfig& cfg);

} // namespace dappnet
