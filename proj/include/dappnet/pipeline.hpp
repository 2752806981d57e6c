#pragma once

#include "dappnet/backbone.hpp"
#include "dappnet/nullmodels.hpp"
#include "dappnet/resilience.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dappnet {

namespace fs = std::filesystem;

/// Invalid manifest or configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DappManifest {
    std::string name;
    std::string blockchain;
    std::string category;
    fs::path source_root; // absolute after loading
    std::optional<std::string> notes;
};

/// Reads {"dapps": [{name, blockchain, category, source_root, notes?}]}.
/// Relative source roots resolve against the manifest's directory. Throws
/// ConfigError for an empty list, duplicate or unusable names, or a
/// missing source root.
std::vector<DappManifest> load_manifest(const fs::path& path);

enum class Stage { Extract, Build, Filter, Metrics, NullModels, Resilience, Report };

std::string to_string(Stage s);
Stage stage_from_string(const std::string& s);
const std::vector<Stage>& all_stages();

struct PipelineConfig {
    double alpha_threshold = 0.05;
    FilterMode filter_mode = FilterMode::EitherDirection;
    bool include_sentinel = true;
    std::uint64_t seed = 0; // root of every randomized stage
    RemovalConfig removal;
    RandomizationConfig null_models;
    fs::path output_dir = "dappnet-out";
    std::set<Stage> stages{all_stages().begin(), all_stages().end()};
    std::size_t workers = 1;
    std::size_t clique_budget = 1'000'000;
    std::size_t small_world_min_nodes = 50;
    std::size_t resilience_min_nodes = 50;

    /// Throws ConfigError.
    void validate() const;
};

/// Output directory: explicit flag, else $DAPPNET_OUTPUT_DIR, else the
/// default "dappnet-out".
fs::path resolve_output_dir(const std::optional<std::string>& flag);

/// Per-dApp seed derived from the root seed and the dApp name.
std::uint64_t dapp_seed(std::uint64_t root, const std::string& name);

/// Runs one stage inside a dApp directory. Inputs come from files written
/// by the earlier stages; a missing input raises std::runtime_error.
void run_stage(Stage stage, const DappManifest& dapp, const fs::path& dir, const PipelineConfig& cfg);

/// Stages to execute for one dApp: every requested stage plus, for each of
/// them, any producing stage whose outputs are missing.
std::vector<Stage> plan_stages(const fs::path& dir, const std::set<Stage>& requested);

struct DappOutcome {
    std::string name;
    bool ok = false;
    std::vector<std::string> stages_run;
    std::optional<std::string> failed_stage;
    std::string error;
};

struct CorpusReport {
    std::vector<DappOutcome> outcomes; // manifest name order
    std::vector<std::string> notices;
    bool any_ok() const;
};

/// Per dApp under output_dir/dapps/<name>, corpus aggregates under
/// output_dir/corpus, and output_dir/run_metadata.json (the only file with
/// a timestamp).
CorpusReport run_pipeline(const std::vector<DappManifest>& manifest, const PipelineConfig& cfg);

/// Rebuilds the corpus tables and charts from the per-dApp directories.
void write_corpus_aggregates(const std::vector<DappManifest>& manifest, const PipelineConfig& cfg,
                             CorpusReport& report);

} // namespace dappnet
