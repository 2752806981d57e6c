#include "dappnet/report.hpp"

#include "dappnet/format.hpp"
#include "dappnet/metrics.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dappnet {

WeightedDigraph largest_component(const WeightedDigraph& g)
{
    const auto comps = components(g);
    if (comps.empty())
        return {};
    return g.induced(comps.front());
}

std::vector<std::uint64_t> largest_component_degrees(const WeightedDigraph& g)
{
    const auto comps = components(g);
    if (comps.empty())
        return {};
    const auto deg = total_degrees(g);
    std::vector<std::uint64_t> out;
    for (NodeId v : comps.front())
        out.push_back(deg[v]);
    return out;
}

MetricsReport compute_metrics(const WeightedDigraph& g, const MetricsOptions& options)
{
    MetricsReport r;
    r.nodes = g.node_count();
    r.edges = g.edge_count();
    r.degree_histogram = degree_stats(g);
    r.density = density(g);
    r.selfloop_only_ratio = selfloop_only_ratio(g);

    const Partition p = louvain(g, options.louvain_seed);
    r.modularity = p.modularity;
    r.communities = p.community_count();

    const SimpleGraph sg = simple_view(g);
    const auto comps = components(sg);
    r.n_components = comps.size();
    if (!comps.empty()) {
        r.largest_component_size = comps.front().size();
        const SimpleGraph lcc = sg.induced(comps.front());
        const PathStats ps = path_stats(lcc);
        r.diameter = ps.diameter;
        r.avg_path_length = ps.avg_path_length;
        r.avg_path_defined = ps.avg_defined;
        r.global_clustering = clustering(lcc).global;
        if (!ps.avg_defined)
            r.notices.push_back("largest component is a single node; average path length reported as 0");
    }

    const auto bc = betweenness_by_component(sg);
    const auto local = clustering(sg).local;
    const auto deg = total_degrees(g);
    for (NodeId v = 0; v < g.node_count(); ++v)
        r.node_scores.push_back({g.label(v), bc[v], local[v], deg[v]});

    try {
        r.clique_size_histogram = clique_size_histogram(sg, options.clique_budget);
    } catch (const CliqueBudgetExceeded& e) {
        r.notices.push_back(e.what());
    }

    if (options.fit_powerlaw) {
        const auto degrees = largest_component_degrees(g);
        if (degrees.size() >= 50) {
            r.powerlaw = fit_powerlaw(degrees);
        } else {
            r.notices.push_back("power-law fit skipped: largest component has " + std::to_string(degrees.size())
                                + " nodes (need 50)");
        }
    }
    return r;
}

std::map<std::size_t, double> normalize_cliques(const std::map<std::size_t, std::size_t>& hist,
                                                std::size_t contracts)
{
    if (contracts == 0)
        throw std::invalid_argument("clique normalization needs a positive contract count");
    std::map<std::size_t, double> out;
    for (const auto& [size, count] : hist)
        out[size] = static_cast<double>(count) / static_cast<double>(contracts);
    return out;
}

namespace {

Json histogram_to_json(const std::map<std::size_t, std::size_t>& hist)
{
    Json arr = Json::array();
    for (const auto& [k, v] : hist)
        arr.push_back({k, v});
    return arr;
}

std::map<std::size_t, std::size_t> histogram_from_json(const Json& j)
{
    std::map<std::size_t, std::size_t> hist;
    for (const auto& pair : j)
        hist[pair.at(0).get<std::size_t>()] = pair.at(1).get<std::size_t>();
    return hist;
}

template <typename T>
Json optional_json(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace

Json to_json(const PowerLawFit& f)
{
    return {{"alpha", f.alpha},         {"x_min", f.x_min},       {"ks_distance", f.ks_distance},
            {"n_tail", f.n_tail},       {"n_samples", f.n_samples}, {"reliable", f.reliable}};
}

PowerLawFit powerlaw_from_json(const Json& j)
{
    PowerLawFit f;
    f.alpha = j.at("alpha").get<double>();
    f.x_min = j.at("x_min").get<std::uint64_t>();
    f.ks_distance = j.at("ks_distance").get<double>();
    f.n_tail = j.at("n_tail").get<std::size_t>();
    f.n_samples = j.at("n_samples").get<std::size_t>();
    f.reliable = j.at("reliable").get<bool>();
    return f;
}

Json to_json(const MetricsReport& r)
{
    Json scores = Json::array();
    for (const auto& s : r.node_scores)
        scores.push_back({{"node", s.label},
                          {"betweenness", s.betweenness},
                          {"local_clustering", s.local_clustering},
                          {"degree", s.degree}});
    return {
        {"nodes", r.nodes},
        {"edges", r.edges},
        {"degree_histogram", histogram_to_json(r.degree_histogram)},
        {"density", r.density},
        {"selfloop_only_ratio", r.selfloop_only_ratio},
        {"modularity", r.modularity},
        {"communities", r.communities},
        {"n_components", r.n_components},
        {"largest_component_size", r.largest_component_size},
        {"diameter", r.diameter},
        {"global_clustering", r.global_clustering},
        {"avg_path_length", r.avg_path_length},
        {"avg_path_defined", r.avg_path_defined},
        {"node_scores", scores},
        {"clique_size_histogram", r.clique_size_histogram ? histogram_to_json(*r.clique_size_histogram) : Json(nullptr)},
        {"powerlaw", r.powerlaw ? to_json(*r.powerlaw) : Json(nullptr)},
        {"notices", r.notices},
    };
}

MetricsReport metrics_from_json(const Json& j)
{
    MetricsReport r;
    r.nodes = j.at("nodes").get<std::size_t>();
    r.edges = j.at("edges").get<std::size_t>();
    r.degree_histogram = histogram_from_json(j.at("degree_histogram"));
    r.density = j.at("density").get<double>();
    r.selfloop_only_ratio = j.at("selfloop_only_ratio").get<double>();
    r.modularity = j.at("modularity").get<double>();
    r.communities = j.at("communities").get<std::size_t>();
    r.n_components = j.at("n_components").get<std::size_t>();
    r.largest_component_size = j.at("largest_component_size").get<std::size_t>();
    r.diameter = j.at("diameter").get<std::size_t>();
    r.global_clustering = j.at("global_clustering").get<double>();
    r.avg_path_length = j.at("avg_path_length").get<double>();
    r.avg_path_defined = j.at("avg_path_defined").get<bool>();
    for (const auto& s : j.at("node_scores"))
        r.node_scores.push_back({s.at("node").get<std::string>(), s.at("betweenness").get<double>(),
                                 s.at("local_clustering").get<double>(), s.at("degree").get<std::size_t>()});
    if (!j.at("clique_size_histogram").is_null())
        r.clique_size_histogram = histogram_from_json(j.at("clique_size_histogram"));
    if (!j.at("powerlaw").is_null())
        r.powerlaw = powerlaw_from_json(j.at("powerlaw"));
    r.notices = j.at("notices").get<std::vector<std::string>>();
    return r;
}

Json to_json(const RemovalTrace& t)
{
    return {
        {"strategy", to_string(t.strategy)},
        {"fractions", t.fractions},
        {"removed", t.removed},
        {"avg_path_lengths", t.avg_path_lengths},
        {"stderr", t.stderr_path},
        {"giant_share", t.giant_share},
        {"disconnected_share", t.disconnected_share},
        {"disconnected_at", optional_json(t.disconnected_at)},
        {"removal_order", t.removal_order},
        {"trials", t.trials},
        {"seed", t.seed},
    };
}

RemovalTrace trace_from_json(const Json& j)
{
    RemovalTrace t;
    t.strategy = removal_strategy_from_string(j.at("strategy").get<std::string>());
    t.fractions = j.at("fractions").get<std::vector<double>>();
    t.removed = j.at("removed").get<std::vector<std::size_t>>();
    t.avg_path_lengths = j.at("avg_path_lengths").get<std::vector<double>>();
    t.stderr_path = j.at("stderr").get<std::vector<double>>();
    t.giant_share = j.at("giant_share").get<std::vector<double>>();
    t.disconnected_share = j.at("disconnected_share").get<std::vector<double>>();
    if (!j.at("disconnected_at").is_null())
        t.disconnected_at = j.at("disconnected_at").get<double>();
    t.removal_order = j.at("removal_order").get<std::vector<std::string>>();
    t.trials = j.at("trials").get<std::size_t>();
    t.seed = j.at("seed").get<std::uint64_t>();
    return t;
}

Json to_json(const CriticalThreshold& c)
{
    return {{"dapp", c.dapp},
            {"threshold_fraction", optional_json(c.threshold_fraction)},
            {"removed_nodes", c.removed_nodes}};
}

Json to_json(const SmallWorldComparison& s)
{
    return {{"real_avg_path", s.real_avg_path},
            {"random_avg_path_mean", s.random_avg_path_mean},
            {"real_clustering", s.real_clustering},
            {"random_clustering_mean", s.random_clustering_mean},
            {"nodes", s.nodes},
            {"edges", s.edges},
            {"realizations", s.realizations}};
}

std::optional<SmallWorldComparison> small_world_from_json(const Json& j)
{
    if (j.is_null())
        return std::nullopt;
    SmallWorldComparison s;
    s.real_avg_path = j.at("real_avg_path").get<double>();
    s.random_avg_path_mean = j.at("random_avg_path_mean").get<double>();
    s.real_clustering = j.at("real_clustering").get<double>();
    s.random_clustering_mean = j.at("random_clustering_mean").get<double>();
    s.nodes = j.at("nodes").get<std::size_t>();
    s.edges = j.at("edges").get<std::size_t>();
    s.realizations = j.at("realizations").get<std::size_t>();
    return s;
}

Json to_json(const BlockNullSummary& s)
{
    return {{"original_clustering", s.original_clustering},
            {"null_clustering_mean", s.null_clustering_mean},
            {"null_clustering_stderr", s.null_clustering_stderr},
            {"original_rank_correlation", optional_json(s.original_rank_correlation)},
            {"null_rank_correlation_mean", optional_json(s.null_rank_correlation_mean)},
            {"blocks", s.blocks},
            {"realizations", s.realizations}};
}

Json backbone_summary(const BackboneResult& b, FilterMode mode)
{
    return {{"alpha_threshold", b.alpha_threshold},
            {"filter_mode", to_string(mode)},
            {"nodes_before", b.nodes_before},
            {"edges_before", b.edges_before},
            {"nodes_after", b.filtered.node_count()},
            {"edges_after", b.filtered.edge_count()},
            {"retention_nodes", b.retention_nodes},
            {"retention_edges", b.retention_edges}};
}

Json graph_to_json(const WeightedDigraph& g)
{
    Json edges = Json::array();
    for (const auto& [key, w] : g.edges())
        edges.push_back({key.first, key.second, w});
    return {{"nodes", g.labels()}, {"edges", edges}};
}

WeightedDigraph graph_from_json(const Json& j)
{
    WeightedDigraph g;
    for (const auto& label : j.at("nodes"))
        g.add_node(label.get<std::string>());
    for (const auto& e : j.at("edges")) {
        const auto s = e.at(0).get<std::size_t>();
        const auto t = e.at(1).get<std::size_t>();
        if (s >= g.node_count() || t >= g.node_count())
            throw std::runtime_error("graph JSON: edge refers to an unknown node");
        g.add_edge(s, t, e.at(2).get<double>());
    }
    return g;
}

void write_histogram_csv(std::ostream& out, const std::string& key, const std::map<std::size_t, std::size_t>& hist)
{
    out << key << ",count\n";
    for (const auto& [k, v] : hist)
        out << k << ',' << v << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<RemovalTrace>& traces)
{
    out << "fraction,value,strategy,trial_mean,stderr\n";
    for (const auto& t : traces)
        for (std::size_t i = 0; i < t.fractions.size(); ++i)
            out << format_number(t.fractions[i]) << ',' << format_number(t.avg_path_lengths[i]) << ','
                << to_string(t.strategy) << ',' << format_number(t.giant_share[i]) << ','
                << format_number(t.stderr_path[i]) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& j)
{
    write_text_file(path, j.dump(2) + "\n");
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

} // namespace dappnet
