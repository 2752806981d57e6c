#pragma once

#include "dappnet/backbone.hpp"
#include "dappnet/graph.hpp"
#include "dappnet/nullmodels.hpp"
#include "dappnet/powerlaw.hpp"
#include "dappnet/resilience.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dappnet {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

struct NodeScore {
    std::string label;
    double betweenness = 0.0;
    double local_clustering = 0.0;
    std::size_t degree = 0;
};

/// Structural summary of one network. Path length, diameter and global
/// clustering refer to the largest weak component.
struct MetricsReport {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::map<std::size_t, std::size_t> degree_histogram;
    double density = 0.0;
    double selfloop_only_ratio = 0.0;
    double modularity = 0.0;
    std::size_t communities = 0;
    std::size_t n_components = 0;
    std::size_t largest_component_size = 0;
    std::size_t diameter = 0;
    double global_clustering = 0.0;
    double avg_path_length = 0.0;
    bool avg_path_defined = false;
    std::vector<NodeScore> node_scores; // node id order
    std::optional<std::map<std::size_t, std::size_t>> clique_size_histogram; // nullopt past the budget
    std::optional<PowerLawFit> powerlaw;
    std::vector<std::string> notices;
};

struct MetricsOptions {
    std::uint64_t louvain_seed = 0;
    std::size_t clique_budget = 1'000'000;
    bool fit_powerlaw = true;
};

MetricsReport compute_metrics(const WeightedDigraph& g, const MetricsOptions& options = {});

/// Clique counts divided by the dApp's contract count.
std::map<std::size_t, double> normalize_cliques(const std::map<std::size_t, std::size_t>& hist,
                                                std::size_t contracts);

/// Total degrees of the nodes in the largest weak component.
std::vector<std::uint64_t> largest_component_degrees(const WeightedDigraph& g);

/// Largest weak component as its own graph (labels kept, id order kept).
WeightedDigraph largest_component(const WeightedDigraph& g);

Json to_json(const MetricsReport& r);
MetricsReport metrics_from_json(const Json& j);
Json to_json(const PowerLawFit& f);
PowerLawFit powerlaw_from_json(const Json& j);
Json to_json(const RemovalTrace& t);
RemovalTrace trace_from_json(const Json& j);
Json to_json(const CriticalThreshold& c);
Json to_json(const SmallWorldComparison& s);
std::optional<SmallWorldComparison> small_world_from_json(const Json& j);
Json to_json(const BlockNullSummary& s);
Json backbone_summary(const BackboneResult& b, FilterMode mode);

/// {"nodes": [labels], "edges": [[source, target, weight], ...]}
Json graph_to_json(const WeightedDigraph& g);
WeightedDigraph graph_from_json(const Json& j);

/// Two-column CSV with the given key column name.
void write_histogram_csv(std::ostream& out, const std::string& key, const std::map<std::size_t, std::size_t>& hist);

/// fraction,value,strategy,trial_mean,stderr
void write_trace_csv(std::ostream& out, const std::vector<RemovalTrace>& traces);

/// Pretty-printed with a trailing newline. Throws std::runtime_error on I/O
/// failure or, when reading, on malformed JSON.
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace dappnet
