#include "dappnet/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace dappnet {

NodeId WeightedDigraph::add_node(std::string_view label)
{
    auto it = index_.find(std::string(label));
    if (it != index_.end())
        return it->second;
    const NodeId id = labels_.size();
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
}

void WeightedDigraph::add_edge(std::string_view source, std::string_view target, double weight)
{
    const NodeId s = add_node(source);
    const NodeId t = add_node(target);
    add_edge(s, t, weight);
}

void WeightedDigraph::add_edge(NodeId source, NodeId target, double weight)
{
    if (!(weight > 0.0))
        throw std::invalid_argument("edge weight must be positive");
    if (source >= labels_.size() || target >= labels_.size())
        throw std::out_of_range("edge endpoint is not a node");
    edges_[{source, target}] += weight;
}

std::optional<NodeId> WeightedDigraph::find(std::string_view label) const
{
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

double WeightedDigraph::weight(NodeId source, NodeId target) const
{
    auto it = edges_.find({source, target});
    return it == edges_.end() ? 0.0 : it->second;
}

double WeightedDigraph::total_weight() const
{
    double total = 0.0;
    for (const auto& [key, w] : edges_)
        total += w;
    return total;
}

WeightedDigraph WeightedDigraph::induced(const std::vector<NodeId>& keep) const
{
    WeightedDigraph sub;
    std::vector<std::optional<NodeId>> remap(labels_.size());
    for (NodeId v : keep)
        remap[v] = sub.add_node(labels_[v]);
    for (const auto& [key, w] : edges_)
        if (remap[key.first] && remap[key.second])
            sub.edges_[{*remap[key.first], *remap[key.second]}] = w;
    return sub;
}

bool WeightedDigraph::operator==(const WeightedDigraph& other) const
{
    return labels_ == other.labels_ && edges_ == other.edges_;
}

std::size_t SimpleGraph::edge_count() const
{
    std::size_t total = 0;
    for (const auto& nbrs : adj)
        total += nbrs.size();
    return total / 2;
}

bool SimpleGraph::has_edge(NodeId u, NodeId v) const
{
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

void SimpleGraph::add_edge(NodeId u, NodeId v)
{
    if (u == v || has_edge(u, v))
        return;
    adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
}

SimpleGraph SimpleGraph::induced(const std::vector<NodeId>& keep) const
{
    constexpr NodeId kAbsent = static_cast<NodeId>(-1);
    std::vector<NodeId> remap(adj.size(), kAbsent);
    for (NodeId i = 0; i < keep.size(); ++i)
        remap[keep[i]] = i;
    SimpleGraph sub(keep.size());
    for (NodeId i = 0; i < keep.size(); ++i) {
        for (NodeId w : adj[keep[i]])
            if (remap[w] != kAbsent)
                sub.adj[i].push_back(remap[w]);
        std::sort(sub.adj[i].begin(), sub.adj[i].end());
    }
    return sub;
}

SimpleGraph simple_view(const WeightedDigraph& g)
{
    SimpleGraph s(g.node_count());
    for (const auto& [key, w] : g.edges()) {
        if (key.first == key.second)
            continue;
        s.adj[key.first].push_back(key.second);
        s.adj[key.second].push_back(key.first);
    }
    for (auto& nbrs : s.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return s;
}

} // namespace dappnet
