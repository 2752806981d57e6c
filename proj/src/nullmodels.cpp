#include "dappnet/nullmodels.hpp"

#include "dappnet/metrics.hpp"
#include "dappnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace dappnet {

std::string to_string(PartitionSource source)
{
    return source == PartitionSource::Louvain ? "louvain" : "weak-components";
}

PartitionSource partition_source_from_string(const std::string& s)
{
    if (s == "weak-components")
        return PartitionSource::WeakComponents;
    if (s == "louvain")
        return PartitionSource::Louvain;
    throw std::invalid_argument("unknown partition source '" + s + "'");
}

void RandomizationConfig::validate() const
{
    if (n_realizations < 1)
        throw std::invalid_argument("n_realizations must be at least 1");
    if (preserve_degree && (swaps_per_edge < 1 || attempt_factor < 1))
        throw std::invalid_argument("swap settings must be positive");
}

std::vector<std::size_t> make_partition(const WeightedDigraph& g, const RandomizationConfig& cfg)
{
    if (cfg.partition_source == PartitionSource::Louvain)
        return louvain(g, derive_seed(cfg.seed, "louvain")).community;
    std::vector<std::size_t> block(g.node_count(), 0);
    const auto comps = components(g);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (NodeId v : comps[c])
            block[v] = c;
    return block;
}

namespace {

std::uint64_t pair_count(std::uint64_t n)
{
    return n < 2 ? 0 : n * (n - 1) / 2;
}

// k-th pair (i < j) of n items in lexicographic order.
std::pair<std::uint64_t, std::uint64_t> decode_pair(std::uint64_t n, std::uint64_t k)
{
    auto offset = [n](std::uint64_t i) { return i * (2 * n - i - 1) / 2; };
    const double b = 2.0 * static_cast<double>(n) - 1.0;
    auto i = static_cast<std::uint64_t>(std::max(0.0, std::floor((b - std::sqrt(b * b - 8.0 * static_cast<double>(k))) / 2.0)));
    while (i > 0 && offset(i) > k)
        --i;
    while (offset(i + 1) <= k)
        ++i;
    return {i, i + 1 + (k - offset(i))};
}

// m distinct indices from [0, total), Floyd's algorithm; sorted.
std::vector<std::uint64_t> sample_distinct(std::uint64_t total, std::uint64_t m, Rng& rng)
{
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(m * 2);
    for (std::uint64_t j = total - m; j < total; ++j) {
        const std::uint64_t t = uniform_index(rng, j + 1);
        if (!chosen.insert(t).second)
            chosen.insert(j);
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

using Edge = std::pair<NodeId, NodeId>;

Edge ordered(NodeId a, NodeId b)
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

// Double-edge swaps on one block's edge list, in place.
void degree_preserving_swaps(std::vector<Edge>& edges, const RandomizationConfig& cfg, Rng& rng)
{
    if (edges.size() < 2)
        return;
    std::set<Edge> present(edges.begin(), edges.end());
    const std::size_t target = cfg.swaps_per_edge * edges.size();
    const std::size_t max_attempts = target * cfg.attempt_factor;
    std::size_t done = 0;
    for (std::size_t attempt = 0; attempt < max_attempts && done < target; ++attempt) {
        const auto i = static_cast<std::size_t>(uniform_index(rng, edges.size()));
        const auto j = static_cast<std::size_t>(uniform_index(rng, edges.size()));
        if (i == j)
            continue;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (uniform_index(rng, 2) == 1)
            std::swap(c, d);
        // a-b, c-d  ->  a-d, c-b
        if (a == d || c == b)
            continue;
        const Edge e1 = ordered(a, d);
        const Edge e2 = ordered(c, b);
        if (e1 == e2 || present.count(e1) || present.count(e2))
            continue;
        present.erase(edges[i]);
        present.erase(edges[j]);
        present.insert(e1);
        present.insert(e2);
        edges[i] = e1;
        edges[j] = e2;
        ++done;
    }
}

WeightedDigraph with_labels_of(const WeightedDigraph& g)
{
    WeightedDigraph out;
    for (const auto& label : g.labels())
        out.add_node(label);
    return out;
}

} // namespace

WeightedDigraph block_preserving_rewire(const WeightedDigraph& g, const std::vector<std::size_t>& partition,
                                        const RandomizationConfig& cfg, std::uint64_t realization)
{
    cfg.validate();
    if (partition.size() != g.node_count())
        throw std::invalid_argument("partition does not cover every node");

    const SimpleGraph sg = simple_view(g);
    const std::size_t n_blocks = partition.empty() ? 0 : *std::max_element(partition.begin(), partition.end()) + 1;
    std::vector<std::vector<NodeId>> members(n_blocks);
    for (NodeId v = 0; v < g.node_count(); ++v)
        members[partition[v]].push_back(v);

    std::vector<std::vector<Edge>> block_edges(n_blocks);
    std::vector<Edge> frozen;
    for (NodeId u = 0; u < sg.node_count(); ++u) {
        for (NodeId v : sg.adj[u]) {
            if (v <= u)
                continue;
            if (partition[u] == partition[v])
                block_edges[partition[u]].push_back({u, v});
            else
                frozen.push_back({u, v});
        }
    }

    WeightedDigraph out = with_labels_of(g);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        auto& edges = block_edges[b];
        if (edges.empty())
            continue;
        Rng rng(derive_seed(cfg.seed, "rewire", realization * n_blocks + b));
        if (cfg.preserve_degree) {
            degree_preserving_swaps(edges, cfg, rng);
        } else {
            const auto& nodes = members[b];
            const std::uint64_t total = pair_count(nodes.size());
            if (edges.size() > total)
                throw std::runtime_error("block " + std::to_string(b) + " cannot hold its edges");
            std::vector<Edge> fresh;
            fresh.reserve(edges.size());
            for (std::uint64_t k : sample_distinct(total, edges.size(), rng)) {
                const auto [i, j] = decode_pair(nodes.size(), k);
                fresh.push_back({nodes[i], nodes[j]});
            }
            edges = std::move(fresh);
        }
        for (const auto& [u, v] : edges)
            out.add_edge(u, v, 1.0);
    }
    for (const auto& [u, v] : frozen)
        out.add_edge(u, v, 1.0);
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.has_self_loop(v))
            out.add_edge(v, v, 1.0);
    return out;
}

WeightedDigraph uniform_random_graph(std::size_t n, std::size_t m, std::uint64_t seed)
{
    const std::uint64_t total = pair_count(n);
    if (m > total)
        throw std::invalid_argument("uniform_random_graph: " + std::to_string(m) + " edges do not fit on "
                                    + std::to_string(n) + " nodes");
    WeightedDigraph g;
    for (std::size_t v = 0; v < n; ++v)
        g.add_node(std::to_string(v));
    if (m == 0)
        return g;
    Rng rng(seed);
    for (std::uint64_t k : sample_distinct(total, m, rng)) {
        const auto [i, j] = decode_pair(n, k);
        g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0);
    }
    return g;
}

namespace {

struct ComponentShape {
    double avg_path = 0.0;
    double clustering = 0.0;
};

ComponentShape largest_component_shape(const SimpleGraph& sg)
{
    const auto comps = components(sg);
    if (comps.empty())
        return {};
    const SimpleGraph lcc = sg.induced(comps.front());
    return {path_stats(lcc).avg_path_length, clustering(lcc).global};
}

} // namespace

std::optional<SmallWorldComparison> small_world_comparison(const WeightedDigraph& g, const RandomizationConfig& cfg,
                                                           std::size_t min_nodes)
{
    cfg.validate();
    const SimpleGraph sg = simple_view(g);
    const auto comps = components(sg);
    if (comps.empty() || comps.front().size() < min_nodes)
        return std::nullopt;
    const SimpleGraph lcc = sg.induced(comps.front());

    SmallWorldComparison r;
    r.nodes = lcc.node_count();
    r.edges = lcc.edge_count();
    r.realizations = cfg.n_realizations;
    r.real_avg_path = path_stats(lcc).avg_path_length;
    r.real_clustering = clustering(lcc).global;
    for (std::size_t k = 0; k < cfg.n_realizations; ++k) {
        const auto random = uniform_random_graph(r.nodes, r.edges, derive_seed(cfg.seed, "small-world", k));
        const auto shape = largest_component_shape(simple_view(random));
        r.random_avg_path_mean += shape.avg_path;
        r.random_clustering_mean += shape.clustering;
    }
    r.random_avg_path_mean /= static_cast<double>(cfg.n_realizations);
    r.random_clustering_mean /= static_cast<double>(cfg.n_realizations);
    return r;
}

BlockNullSummary block_null_summary(const WeightedDigraph& g, const RandomizationConfig& cfg)
{
    cfg.validate();
    BlockNullSummary s;
    const auto partition = make_partition(g, cfg);
    s.blocks = partition.empty() ? 0 : *std::max_element(partition.begin(), partition.end()) + 1;
    s.realizations = cfg.n_realizations;

    auto rank_correlation = [](const SimpleGraph& sg) {
        return spearman(betweenness(sg), clustering(sg).local);
    };

    const SimpleGraph sg = simple_view(g);
    s.original_clustering = clustering(sg).global;
    s.original_rank_correlation = rank_correlation(sg);

    std::vector<double> values;
    double corr_sum = 0.0;
    std::size_t corr_count = 0;
    for (std::size_t k = 0; k < cfg.n_realizations; ++k) {
        const SimpleGraph null = simple_view(block_preserving_rewire(g, partition, cfg, k));
        values.push_back(clustering(null).global);
        if (auto c = rank_correlation(null)) {
            corr_sum += *c;
            ++corr_count;
        }
    }
    const double n = static_cast<double>(values.size());
    s.null_clustering_mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.null_clustering_mean) * (v - s.null_clustering_mean);
        s.null_clustering_stderr = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    if (corr_count > 0)
        s.null_rank_correlation_mean = corr_sum / static_cast<double>(corr_count);
    return s;
}

} // namespace dappnet
