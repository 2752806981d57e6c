// dappnet: Solidity dApp call networks, backbones, metrics and resilience.

#include "dappnet/pipeline.hpp"
#include "dappnet/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace dappnet;

namespace {

struct Options {
    PipelineConfig cfg;
    std::optional<std::string> output_dir;
    std::string filter_mode = "either-direction";
    std::string partition_source = "weak-components";
    std::string rule = "giant-share-or-second-piece";
    std::vector<std::string> stages;
    bool no_sentinel = false;
    std::string manifest;
    std::string dir;
    std::string source;
    std::string name;
};

void add_config_flags(CLI::App* app, Options& o)
{
    app->add_option("--alpha", o.cfg.alpha_threshold, "Disparity filter significance threshold in (0, 1)")
        ->capture_default_str();
    app->add_option("--filter-mode", o.filter_mode, "either-direction or out-only")->capture_default_str();
    app->add_flag("--no-sentinel", o.no_sentinel, "Drop calls to unresolved receivers (the None node)");
    app->add_option("--seed", o.cfg.seed, "Root seed for every randomized stage")->capture_default_str();
    app->add_option("--grid", o.cfg.removal.grid, "Removal fractions, increasing, within [0, 0.2]");
    app->add_option("--trials", o.cfg.removal.trials, "Random removal trials")->capture_default_str();
    app->add_option("--disconnection-rule", o.rule, "giant-share-or-second-piece or any-split")
        ->capture_default_str();
    app->add_option("--giant-share", o.cfg.removal.giant_share, "Giant piece share below which a trace disconnects")
        ->capture_default_str();
    app->add_option("--realizations", o.cfg.null_models.n_realizations, "Null-model realizations")
        ->capture_default_str();
    app->add_flag("--preserve-degree", o.cfg.null_models.preserve_degree,
                  "Degree-preserving swaps inside blocks instead of uniform redraws");
    app->add_option("--partition-source", o.partition_source, "weak-components or louvain")->capture_default_str();
    app->add_option("--clique-budget", o.cfg.clique_budget, "Maximal-clique enumeration limit")
        ->capture_default_str();
    app->add_option("--small-world-min-nodes", o.cfg.small_world_min_nodes,
                    "Smallest largest component for the small-world comparison")
        ->capture_default_str();
    app->add_option("--resilience-min-nodes", o.cfg.resilience_min_nodes,
                    "Smallest largest component for removal experiments")
        ->capture_default_str();
    app->add_option("-j,--workers", o.cfg.workers, "dApps processed concurrently")->capture_default_str();
    app->add_option("-o,--output-dir", o.output_dir, "Output directory (else $DAPPNET_OUTPUT_DIR, else dappnet-out)");
}

void finish_config(Options& o)
{
    try {
        o.cfg.filter_mode = filter_mode_from_string(o.filter_mode);
        o.cfg.null_models.partition_source = partition_source_from_string(o.partition_source);
        o.cfg.removal.rule = disconnection_rule_from_string(o.rule);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    o.cfg.include_sentinel = !o.no_sentinel;
    o.cfg.output_dir = resolve_output_dir(o.output_dir);
    if (!o.stages.empty()) {
        o.cfg.stages.clear();
        for (const auto& s : o.stages)
            o.cfg.stages.insert(stage_from_string(s));
    }
    o.cfg.validate();
}

int report_outcome(const CorpusReport& report)
{
    for (const auto& o : report.outcomes) {
        std::cout << o.name << ": " << (o.ok ? "ok" : "FAILED");
        if (!o.ok)
            std::cout << " at " << o.failed_stage.value_or("?") << " (" << o.error << ")";
        std::cout << '\n';
    }
    for (const auto& n : report.notices)
        std::cerr << "note: " << n << '\n';
    return report.any_ok() ? 0 : 1;
}

// A single stage over a manifest, or over one dApp directory.
int run_single(Stage stage, Options& o)
{
    o.stages = {to_string(stage)};
    finish_config(o);
    if (!o.manifest.empty())
        return report_outcome(run_pipeline(load_manifest(o.manifest), o.cfg));
    if (o.dir.empty())
        throw ConfigError("give --manifest or --dir");
    DappManifest dapp;
    dapp.name = o.name.empty() ? fs::path(o.dir).lexically_normal().filename().string() : o.name;
    if (stage == Stage::Extract) {
        if (o.source.empty())
            throw ConfigError("extract with --dir needs --source");
        dapp.source_root = o.source;
    }
    run_stage(stage, dapp, o.dir, o.cfg);
    std::cout << to_string(stage) << ": wrote " << o.dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dappnet: call networks of Solidity dApps"};
    app.require_subcommand(1);
    Options o;

    struct Sub {
        const char* name;
        Stage stage;
        const char* help;
    };
    const Sub subs[] = {
        {"extract", Stage::Extract, "Extract call records from Solidity sources"},
        {"build", Stage::Build, "Build contract and function networks from call records"},
        {"filter", Stage::Filter, "Extract the function-network backbone"},
        {"metrics", Stage::Metrics, "Compute network metrics"},
        {"nullmodel", Stage::NullModels, "Compare against null models"},
        {"resilience", Stage::Resilience, "Run node removal experiments"},
        {"report", Stage::Report, "Write report JSON, graph exports and charts"},
    };
    std::map<CLI::App*, Stage> stage_of;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("-m,--manifest", o.manifest, "Corpus manifest (JSON)");
        sub->add_option("-d,--dir", o.dir, "Work on a single dApp directory instead of a manifest");
        sub->add_option("--name", o.name, "dApp name with --dir (default: directory name)");
        if (s.stage == Stage::Extract)
            sub->add_option("-s,--source", o.source, "Source tree with --dir");
        add_config_flags(sub, o);
        stage_of[sub] = s.stage;
    }
    CLI::App* pipeline = app.add_subcommand("pipeline", "Run the whole pipeline over a manifest");
    pipeline->add_option("-m,--manifest", o.manifest, "Corpus manifest (JSON)")->required();
    pipeline->add_option("--stages", o.stages, "Subset of extract build filter metrics nullmodels resilience report");
    add_config_flags(pipeline, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (pipeline->parsed()) {
            finish_config(o);
            return report_outcome(run_pipeline(load_manifest(o.manifest), o.cfg));
        }
        for (const auto& [sub, stage] : stage_of)
            if (sub->parsed())
                return run_single(stage, o);
    } catch (const ConfigError& e) {
        std::cerr << "dappnet: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "dappnet: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
