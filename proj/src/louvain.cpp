#include "dappnet/metrics.hpp"
#include "dappnet/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dappnet {

namespace {

// Undirected weighted graph: both directions summed, self-loop weight
// counted once in the total and twice in the node degree.
struct UGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::size_t, double>>> nbrs; // excludes self
    std::vector<double> loop;
    double total = 0.0; // m

    std::vector<double> degrees() const
    {
        std::vector<double> k(n, 0.0);
        for (std::size_t u = 0; u < n; ++u) {
            k[u] = 2.0 * loop[u];
            for (const auto& [v, w] : nbrs[u])
                k[u] += w;
        }
        return k;
    }
};

UGraph build(std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, double>& pairs,
             std::vector<double> loop)
{
    UGraph u;
    u.n = n;
    u.nbrs.resize(n);
    u.loop = std::move(loop);
    for (double w : u.loop)
        u.total += w;
    for (const auto& [key, w] : pairs) {
        u.nbrs[key.first].emplace_back(key.second, w);
        u.nbrs[key.second].emplace_back(key.first, w);
        u.total += w;
    }
    return u;
}

UGraph undirected(const WeightedDigraph& g)
{
    std::map<std::pair<std::size_t, std::size_t>, double> pairs;
    std::vector<double> loop(g.node_count(), 0.0);
    for (const auto& [key, w] : g.edges()) {
        if (key.first == key.second)
            loop[key.first] += w;
        else
            pairs[{std::min(key.first, key.second), std::max(key.first, key.second)}] += w;
    }
    return build(g.node_count(), pairs, std::move(loop));
}

double modularity_of(const UGraph& g, const std::vector<std::size_t>& comm)
{
    if (g.total <= 0.0)
        return 0.0;
    const auto k = g.degrees();
    const std::size_t nc = comm.empty() ? 0 : *std::max_element(comm.begin(), comm.end()) + 1;
    std::vector<double> internal(nc, 0.0), tot(nc, 0.0);
    for (std::size_t u = 0; u < g.n; ++u) {
        tot[comm[u]] += k[u];
        internal[comm[u]] += g.loop[u];
        for (const auto& [v, w] : g.nbrs[u])
            if (u < v && comm[u] == comm[v])
                internal[comm[u]] += w;
    }
    const double m = g.total;
    double q = 0.0;
    for (std::size_t c = 0; c < nc; ++c)
        q += internal[c] / m - (tot[c] / (2.0 * m)) * (tot[c] / (2.0 * m));
    return q;
}

// Renumbers labels 0.. by first appearance.
std::size_t compact(std::vector<std::size_t>& comm)
{
    std::map<std::size_t, std::size_t> ids;
    for (auto& c : comm) {
        auto [it, fresh] = ids.emplace(c, ids.size());
        c = it->second;
    }
    return ids.size();
}

// One round of local moving. Returns true if any node changed community.
bool local_moving(const UGraph& g, std::vector<std::size_t>& comm, Rng& rng)
{
    const double m2 = 2.0 * g.total;
    const auto k = g.degrees();
    std::vector<double> tot(g.n, 0.0);
    for (std::size_t u = 0; u < g.n; ++u)
        tot[comm[u]] += k[u];

    std::vector<std::size_t> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);

    std::vector<double> link(g.n, 0.0);
    std::vector<std::size_t> touched;
    bool moved_any = false;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t u : order) {
            const std::size_t own = comm[u];
            touched.clear();
            for (const auto& [v, w] : g.nbrs[u]) {
                if (link[comm[v]] == 0.0)
                    touched.push_back(comm[v]);
                link[comm[v]] += w;
            }
            tot[own] -= k[u];
            auto gain = [&](std::size_t c) { return link[c] - tot[c] * k[u] / m2; };

            std::size_t best = own;
            double best_gain = gain(own);
            // Ascending scan with a strict test: equal gains keep the lowest id.
            std::sort(touched.begin(), touched.end());
            for (std::size_t c : touched) {
                if (c == own)
                    continue;
                const double gc = gain(c);
                if (gc > best_gain + 1e-12) {
                    best = c;
                    best_gain = gc;
                }
            }
            tot[best] += k[u];
            if (best != own) {
                comm[u] = best;
                improved = true;
                moved_any = true;
            }
            for (std::size_t c : touched)
                link[c] = 0.0;
            link[own] = 0.0;
        }
    }
    return moved_any;
}

UGraph aggregate(const UGraph& g, const std::vector<std::size_t>& comm, std::size_t nc)
{
    std::map<std::pair<std::size_t, std::size_t>, double> pairs;
    std::vector<double> loop(nc, 0.0);
    for (std::size_t u = 0; u < g.n; ++u) {
        loop[comm[u]] += g.loop[u];
        for (const auto& [v, w] : g.nbrs[u]) {
            if (u >= v)
                continue;
            const std::size_t a = comm[u], b = comm[v];
            if (a == b)
                loop[a] += w;
            else
                pairs[{std::min(a, b), std::max(a, b)}] += w;
        }
    }
    return build(nc, pairs, std::move(loop));
}

} // namespace

double modularity(const WeightedDigraph& g, const std::vector<std::size_t>& community)
{
    if (community.size() != g.node_count())
        throw std::invalid_argument("modularity: partition size does not match the graph");
    return modularity_of(undirected(g), community);
}

Partition louvain(const WeightedDigraph& g, std::uint64_t seed)
{
    Partition result;
    if (g.empty())
        return result;
    const UGraph base = undirected(g);
    result.community.resize(g.node_count());
    std::iota(result.community.begin(), result.community.end(), 0);
    if (base.total <= 0.0)
        return result;

    UGraph level = base;
    for (std::uint64_t round = 0;; ++round) {
        std::vector<std::size_t> comm(level.n);
        std::iota(comm.begin(), comm.end(), 0);
        Rng rng(derive_seed(seed, "louvain", round));
        if (!local_moving(level, comm, rng))
            break;
        const std::size_t nc = compact(comm);
        for (auto& c : result.community)
            c = comm[c];
        if (nc == level.n)
            break;
        level = aggregate(level, comm, nc);
    }
    compact(result.community);
    result.modularity = modularity_of(base, result.community);
    return result;
}

} // namespace dappnet
