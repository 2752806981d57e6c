#include "dappnet/backbone.hpp"

#include <cmath>
#include <stdexcept>

namespace dappnet {

std::string to_string(FilterMode mode)
{
    return mode == FilterMode::OutOnly ? "out-only" : "either-direction";
}

FilterMode filter_mode_from_string(const std::string& s)
{
    if (s == "either-direction" || s == "either")
        return FilterMode::EitherDirection;
    if (s == "out-only" || s == "out")
        return FilterMode::OutOnly;
    throw std::invalid_argument("unknown filter mode '" + s + "'");
}

std::optional<double> edge_alpha(double weight, double strength, std::size_t degree)
{
    if (!(weight > 0.0) || !(strength > 0.0) || degree < 1)
        throw std::invalid_argument("edge_alpha: weight, strength and degree must be positive");
    // Tolerate rounding when weight is the whole strength.
    if (weight > strength * (1.0 + 1e-12))
        throw std::invalid_argument("edge_alpha: weight exceeds strength");
    if (degree == 1)
        return std::nullopt;
    const double p = std::min(weight / strength, 1.0);
    return std::pow(1.0 - p, static_cast<double>(degree - 1));
}

std::vector<EdgeSignificance> edge_significances(const WeightedDigraph& g)
{
    const std::size_t n = g.node_count();
    std::vector<double> out_strength(n, 0.0), in_strength(n, 0.0);
    std::vector<std::size_t> out_degree(n, 0), in_degree(n, 0);
    for (const auto& [key, w] : g.edges()) {
        out_strength[key.first] += w;
        ++out_degree[key.first];
        in_strength[key.second] += w;
        ++in_degree[key.second];
    }
    std::vector<EdgeSignificance> result;
    result.reserve(g.edge_count());
    for (const auto& [key, w] : g.edges()) {
        EdgeSignificance e;
        e.source = key.first;
        e.target = key.second;
        e.p_out = w / out_strength[key.first];
        e.p_in = w / in_strength[key.second];
        e.alpha_out = edge_alpha(w, out_strength[key.first], out_degree[key.first]);
        e.alpha_in = edge_alpha(w, in_strength[key.second], in_degree[key.second]);
        result.push_back(e);
    }
    return result;
}

BackboneResult filter_graph(const WeightedDigraph& g, double alpha_threshold, FilterMode mode)
{
    if (!(alpha_threshold > 0.0 && alpha_threshold < 1.0))
        throw std::invalid_argument("alpha threshold must lie in (0, 1)");
    BackboneResult result;
    result.alpha_threshold = alpha_threshold;
    result.nodes_before = g.node_count();
    result.edges_before = g.edge_count();
    if (g.empty())
        return result;

    auto significant = [&](const std::optional<double>& alpha) { return !alpha || *alpha < alpha_threshold; };

    std::vector<std::pair<WeightedDigraph::EdgeKey, double>> kept;
    std::vector<bool> touched(g.node_count(), false);
    for (const auto& e : edge_significances(g)) {
        bool keep = significant(e.alpha_out);
        if (mode == FilterMode::EitherDirection)
            keep = keep || significant(e.alpha_in);
        if (!keep)
            continue;
        kept.push_back({{e.source, e.target}, g.weight(e.source, e.target)});
        touched[e.source] = touched[e.target] = true;
    }

    std::vector<NodeId> nodes;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (touched[v])
            nodes.push_back(v);
    std::vector<NodeId> remap(g.node_count(), 0);
    WeightedDigraph filtered;
    for (NodeId v : nodes)
        remap[v] = filtered.add_node(g.label(v));
    for (const auto& [key, w] : kept)
        filtered.add_edge(remap[key.first], remap[key.second], w);

    result.filtered = std::move(filtered);
    result.retention_nodes = static_cast<double>(result.filtered.node_count()) / static_cast<double>(g.node_count());
    result.retention_edges = g.edge_count() == 0
        ? 0.0
        : static_cast<double>(result.filtered.edge_count()) / static_cast<double>(g.edge_count());
    return result;
}

} // namespace dappnet
