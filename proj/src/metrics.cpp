#include "dappnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dappnet {

std::vector<std::size_t> total_degrees(const WeightedDigraph& g)
{
    std::vector<std::size_t> deg(g.node_count(), 0);
    for (const auto& [key, w] : g.edges()) {
        ++deg[key.first];
        ++deg[key.second];
    }
    return deg;
}

std::map<std::size_t, std::size_t> degree_stats(const WeightedDigraph& g)
{
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t d : total_degrees(g))
        ++hist[d];
    return hist;
}

double density(const WeightedDigraph& g)
{
    const auto n = static_cast<double>(g.node_count());
    if (g.node_count() == 0)
        return 0.0;
    if (g.node_count() == 1)
        return g.has_self_loop(0) ? 1.0 : 0.0;
    return static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

double selfloop_only_ratio(const WeightedDigraph& g)
{
    if (g.empty())
        return 0.0;
    std::vector<bool> loop(g.node_count(), false), other(g.node_count(), false);
    for (const auto& [key, w] : g.edges()) {
        if (key.first == key.second) {
            loop[key.first] = true;
        } else {
            other[key.first] = true;
            other[key.second] = true;
        }
    }
    std::size_t count = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (loop[v] && !other[v])
            ++count;
    return static_cast<double>(count) / static_cast<double>(g.node_count());
}

std::vector<std::vector<NodeId>> components(const SimpleGraph& g)
{
    const std::size_t n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<NodeId>> comps;
    for (NodeId start = 0; start < n; ++start) {
        if (seen[start])
            continue;
        std::vector<NodeId> comp{start};
        seen[start] = true;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (NodeId w : g.adj[comp[head]]) {
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return comps;
}

std::vector<std::vector<NodeId>> components(const WeightedDigraph& g)
{
    return components(simple_view(g));
}

namespace {

// Hop distances from source; -1 for unreachable.
std::vector<long> bfs(const SimpleGraph& g, NodeId source)
{
    std::vector<long> dist(g.node_count(), -1);
    std::vector<NodeId> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId v = queue[head];
        for (NodeId w : g.adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

} // namespace

PathStats path_stats(const SimpleGraph& g)
{
    PathStats stats;
    const std::size_t n = g.node_count();
    if (n <= 1)
        return stats;
    double total = 0.0;
    for (NodeId s = 0; s < n; ++s) {
        const auto dist = bfs(g, s);
        for (NodeId t = 0; t < n; ++t) {
            if (t == s)
                continue;
            if (dist[t] < 0)
                throw std::invalid_argument("path_stats: graph is not connected");
            total += static_cast<double>(dist[t]);
            stats.diameter = std::max(stats.diameter, static_cast<std::size_t>(dist[t]));
        }
    }
    stats.avg_path_length = total / (static_cast<double>(n) * static_cast<double>(n - 1));
    stats.avg_defined = true;
    return stats;
}

std::vector<double> betweenness(const SimpleGraph& g)
{
    const std::size_t n = g.node_count();
    std::vector<double> bc(n, 0.0);
    if (n < 3)
        return bc;
    std::vector<std::vector<NodeId>> preds(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<long> dist(n);
    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId s = 0; s < n; ++s) {
        for (NodeId v = 0; v < n; ++v) {
            preds[v].clear();
            sigma[v] = 0.0;
            delta[v] = 0.0;
            dist[v] = -1;
        }
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeId v = order[head];
            for (NodeId w : g.adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (std::size_t k = order.size(); k-- > 1;) {
            const NodeId w = order[k];
            for (NodeId v : preds[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            bc[w] += delta[w];
        }
    }
    // Each unordered pair was counted from both ends.
    const double scale = 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    for (double& b : bc)
        b *= scale;
    return bc;
}

std::vector<double> betweenness_by_component(const SimpleGraph& g)
{
    std::vector<double> bc(g.node_count(), 0.0);
    for (const auto& comp : components(g)) {
        const auto local = betweenness(g.induced(comp));
        for (std::size_t i = 0; i < comp.size(); ++i)
            bc[comp[i]] = local[i];
    }
    return bc;
}

std::vector<std::size_t> triangles_per_node(const SimpleGraph& g)
{
    const std::size_t n = g.node_count();
    std::vector<std::size_t> tri(n, 0);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.adj[u]) {
            if (v <= u)
                continue;
            // Common neighbours w > v close triangle u < v < w.
            auto a = std::upper_bound(g.adj[u].begin(), g.adj[u].end(), v);
            auto b = std::upper_bound(g.adj[v].begin(), g.adj[v].end(), v);
            while (a != g.adj[u].end() && b != g.adj[v].end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++tri[u];
                    ++tri[v];
                    ++tri[*a];
                    ++a;
                    ++b;
                }
            }
        }
    }
    return tri;
}

ClusteringResult clustering(const SimpleGraph& g)
{
    ClusteringResult r;
    const auto tri = triangles_per_node(g);
    r.local.assign(g.node_count(), 0.0);
    double closed = 0.0;
    double triples = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double k = static_cast<double>(g.degree(v));
        const double pairs = k * (k - 1.0) / 2.0;
        if (pairs > 0.0)
            r.local[v] = static_cast<double>(tri[v]) / pairs;
        closed += static_cast<double>(tri[v]);
        triples += pairs;
    }
    r.global = triples > 0.0 ? closed / triples : 0.0;
    return r;
}

std::size_t Partition::community_count() const
{
    return community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& x)
{
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]])
            ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

} // namespace

std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        return std::nullopt;
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace dappnet
