#pragma once

#include "dappnet/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dappnet {

enum class GraphFormat { Dot, GraphML, EdgeCsv };

std::string to_string(GraphFormat f);
GraphFormat graph_format_from_string(const std::string& s);
std::string file_extension(GraphFormat f);

/// Per-node attributes attached to DOT and GraphML output. Empty vectors
/// are omitted; nonempty ones must match the node count.
struct NodeAttributes {
    std::vector<double> betweenness;
    std::vector<double> clustering;
    std::vector<std::size_t> degree;
    std::vector<std::size_t> community;
};

/// Node attributes from the metrics battery: betweenness within each
/// node's weak component, local clustering, total degree, Louvain id.
NodeAttributes compute_node_attributes(const WeightedDigraph& g, std::uint64_t louvain_seed = 0);

/// Nodes in id order, edges in (source, target) order. Edge-CSV ignores
/// node attributes and lists `source,target,weight`.
void export_graph(std::ostream& out, const WeightedDigraph& g, GraphFormat format,
                  const NodeAttributes& attrs = {});

/// Writes to `path`; throws std::runtime_error on I/O failure.
void export_graph_file(const std::string& path, const WeightedDigraph& g, GraphFormat format,
                       const NodeAttributes& attrs = {});

/// Reads a file written with GraphFormat::EdgeCsv. Isolated nodes are not
/// representable in this format.
WeightedDigraph read_edge_csv(std::istream& in);

} // namespace dappnet
