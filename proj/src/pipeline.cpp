#include "dappnet/pipeline.hpp"

#include "dappnet/charts.hpp"
#include "dappnet/export.hpp"
#include "dappnet/extractor.hpp"
#include "dappnet/format.hpp"
#include "dappnet/metrics.hpp"
#include "dappnet/netbuild.hpp"
#include "dappnet/report.hpp"
#include "dappnet/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace dappnet {

namespace {

constexpr const char* kCalls = "calls.csv";
constexpr const char* kContracts = "contracts.csv";
constexpr const char* kExtractSummary = "extract.json";
constexpr const char* kContractGraph = "contract_graph.json";
constexpr const char* kFunctionGraph = "function_graph.json";
constexpr const char* kBuildSummary = "build.json";
constexpr const char* kBackboneGraph = "function_backbone.json";
constexpr const char* kBackboneSummary = "backbone.json";
constexpr const char* kMetrics = "metrics.json";
constexpr const char* kNullModels = "null_models.json";
constexpr const char* kResilience = "resilience.json";
constexpr const char* kReport = "report.json";

// Files whose presence marks a stage as done.
std::vector<const char*> stage_outputs(Stage s)
{
    switch (s) {
    case Stage::Extract: return {kCalls, kContracts};
    case Stage::Build: return {kContractGraph, kFunctionGraph, kBuildSummary};
    case Stage::Filter: return {kBackboneGraph, kBackboneSummary};
    case Stage::Metrics: return {kMetrics};
    case Stage::NullModels: return {kNullModels};
    case Stage::Resilience: return {kResilience};
    case Stage::Report: return {kReport};
    }
    return {};
}

std::vector<Stage> stage_inputs(Stage s)
{
    switch (s) {
    case Stage::Extract: return {};
    case Stage::Build: return {Stage::Extract};
    case Stage::Filter: return {Stage::Build};
    case Stage::Metrics: return {Stage::Build, Stage::Filter};
    case Stage::NullModels: return {Stage::Filter};
    case Stage::Resilience: return {Stage::Filter};
    case Stage::Report: return {Stage::Build, Stage::Filter, Stage::Metrics};
    }
    return {};
}

bool outputs_present(const fs::path& dir, Stage s)
{
    for (const char* f : stage_outputs(s))
        if (!fs::exists(dir / f))
            return false;
    return true;
}

void check_name(const std::string& name)
{
    if (name.empty() || name == "." || name == ".." || name.find_first_of("/\\") != std::string::npos)
        throw ConfigError("dApp name '" + name + "' cannot be used as a directory name");
    for (unsigned char c : name)
        if (c < 0x20)
            throw ConfigError("dApp name contains a control character");
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("missing input " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<CallRecord> load_calls(const fs::path& dir)
{
    std::istringstream in(read_text(dir / kCalls));
    return read_call_table(in);
}

std::vector<ContractInfo> load_contracts(const fs::path& dir)
{
    std::istringstream in(read_text(dir / kContracts));
    return read_contract_list(in);
}

WeightedDigraph load_graph(const fs::path& path)
{
    if (!fs::exists(path))
        throw std::runtime_error("missing input " + path.string());
    return graph_from_json(read_json_file(path));
}

template <typename Fn>
void write_stream(const fs::path& path, Fn fn)
{
    std::ostringstream out;
    fn(out);
    write_text_file(path, out.str());
}

Json dapp_json(const DappManifest& d)
{
    return {{"name", d.name},
            {"blockchain", d.blockchain},
            {"category", d.category},
            {"notes", d.notes ? Json(*d.notes) : Json(nullptr)}};
}

// ---- stages ----

void stage_extract(const DappManifest& dapp, const fs::path& dir)
{
    const ExtractionResult ex = extract_project(dapp.source_root);
    write_stream(dir / kCalls, [&](std::ostream& o) { write_call_table(o, ex.records); });
    write_stream(dir / kContracts, [&](std::ostream& o) { write_contract_list(o, ex.contracts); });
    std::size_t none = 0;
    for (const auto& r : ex.records)
        none += r.target_contract ? 0 : 1;
    write_json_file(dir / kExtractSummary, {{"schema_version", kSchemaVersion},
                                            {"records", ex.records.size()},
                                            {"none_records", none},
                                            {"contracts", ex.contracts.size()},
                                            {"functions", ex.function_count},
                                            {"warnings", ex.warnings}});
}

void stage_build(const fs::path& dir, const PipelineConfig& cfg)
{
    const auto records = load_calls(dir);
    const auto contracts = load_contracts(dir);
    std::vector<std::string> declared;
    for (const auto& c : contracts)
        declared.push_back(c.name);

    const WeightedDigraph cg = build_contract_graph(records, cfg.include_sentinel, declared);
    const BipartiteCallMatrix bip = build_bipartite(records, cfg.include_sentinel);
    const WeightedDigraph fg = project_functions(bip);

    write_json_file(dir / kContractGraph, graph_to_json(cg));
    write_stream(dir / "contract_graph.csv", [&](std::ostream& o) { write_adjacency_csv(o, cg); });
    export_graph_file((dir / "contract_graph.edges.csv").string(), cg, GraphFormat::EdgeCsv);
    write_stream(dir / "bipartite.csv", [&](std::ostream& o) { write_bipartite_csv(o, bip); });
    write_json_file(dir / kFunctionGraph, graph_to_json(fg));
    export_graph_file((dir / "function_graph.edges.csv").string(), fg, GraphFormat::EdgeCsv);

    Json summary = {{"schema_version", kSchemaVersion},
                    {"include_sentinel", cfg.include_sentinel},
                    {"contracts", contracts.size()},
                    {"size_class", contracts.empty() ? Json(nullptr) : Json(to_string(classify_size(contracts.size())))},
                    {"function_ratio", nullptr},
                    {"source_functions", 0},
                    {"source_contracts", 0},
                    {"contract_graph", {{"nodes", cg.node_count()}, {"edges", cg.edge_count()}}},
                    {"function_graph", {{"nodes", fg.node_count()}, {"edges", fg.edge_count()}}}};
    if (!records.empty()) {
        std::set<std::string> fns, srcs;
        for (const auto& r : records) {
            fns.insert(r.qualified_function());
            srcs.insert(r.source_contract);
        }
        summary["function_ratio"] = function_contract_ratio(records);
        summary["source_functions"] = fns.size();
        summary["source_contracts"] = srcs.size();
    }
    write_json_file(dir / kBuildSummary, summary);
}

void stage_filter(const fs::path& dir, const PipelineConfig& cfg)
{
    const WeightedDigraph fg = load_graph(dir / kFunctionGraph);
    const BackboneResult b = filter_graph(fg, cfg.alpha_threshold, cfg.filter_mode);
    write_json_file(dir / kBackboneGraph, graph_to_json(b.filtered));
    export_graph_file((dir / "function_backbone.edges.csv").string(), b.filtered, GraphFormat::EdgeCsv);
    Json summary = backbone_summary(b, cfg.filter_mode);
    summary["schema_version"] = kSchemaVersion;
    write_json_file(dir / kBackboneSummary, summary);
}

void stage_metrics(const DappManifest& dapp, const fs::path& dir, const PipelineConfig& cfg, std::uint64_t seed)
{
    MetricsOptions opt;
    opt.louvain_seed = derive_seed(seed, "louvain");
    opt.clique_budget = cfg.clique_budget;

    const WeightedDigraph cg = load_graph(dir / kContractGraph);
    const WeightedDigraph bg = load_graph(dir / kBackboneGraph);
    const MetricsReport cm = compute_metrics(cg, opt);
    const MetricsReport bm = compute_metrics(bg, opt);

    write_json_file(dir / kMetrics, {{"schema_version", kSchemaVersion},
                                     {"dapp", dapp_json(dapp)},
                                     {"louvain_seed", opt.louvain_seed},
                                     {"networks", {{"contract", to_json(cm)}, {"function_backbone", to_json(bm)}}}});
    write_stream(dir / "degree_contract.csv", [&](std::ostream& o) { write_histogram_csv(o, "degree", cm.degree_histogram); });
    write_stream(dir / "degree_function_backbone.csv",
                 [&](std::ostream& o) { write_histogram_csv(o, "degree", bm.degree_histogram); });
    if (bm.clique_size_histogram)
        write_stream(dir / "cliques_function_backbone.csv",
                     [&](std::ostream& o) { write_histogram_csv(o, "size", *bm.clique_size_histogram); });
}

void stage_nullmodels(const DappManifest& dapp, const fs::path& dir, const PipelineConfig& cfg, std::uint64_t seed)
{
    RandomizationConfig rc = cfg.null_models;
    rc.seed = derive_seed(seed, "nullmodels");
    const WeightedDigraph bg = load_graph(dir / kBackboneGraph);

    Json doc = {{"schema_version", kSchemaVersion},
                {"dapp", dapp_json(dapp)},
                {"network", "function_backbone"},
                {"config",
                 {{"seed", rc.seed},
                  {"n_realizations", rc.n_realizations},
                  {"preserve_degree", rc.preserve_degree},
                  {"partition_source", to_string(rc.partition_source)}}},
                {"small_world", nullptr},
                {"block_null", nullptr},
                {"notices", Json::array()}};
    if (auto sw = small_world_comparison(bg, rc, cfg.small_world_min_nodes)) {
        doc["small_world"] = to_json(*sw);
    } else {
        doc["notices"].push_back("small-world comparison skipped: largest component below "
                                 + std::to_string(cfg.small_world_min_nodes) + " nodes");
    }
    if (bg.empty())
        doc["notices"].push_back("block null model skipped: empty backbone");
    else
        doc["block_null"] = to_json(block_null_summary(bg, rc));
    write_json_file(dir / kNullModels, doc);
}

void stage_resilience(const DappManifest& dapp, const fs::path& dir, const PipelineConfig& cfg, std::uint64_t seed)
{
    RemovalConfig rc = cfg.removal;
    rc.seed = derive_seed(seed, "resilience");
    const WeightedDigraph lcc = largest_component(load_graph(dir / kBackboneGraph));

    Json doc = {{"schema_version", kSchemaVersion},
                {"dapp", dapp_json(dapp)},
                {"network", "function_backbone"},
                {"component_nodes", lcc.node_count()},
                {"rule", to_string(rc.rule)},
                {"giant_share", rc.giant_share},
                {"traces", Json::array()},
                {"critical_threshold", nullptr},
                {"notices", Json::array()}};
    std::vector<RemovalTrace> traces;
    if (lcc.node_count() < cfg.resilience_min_nodes) {
        doc["notices"].push_back("removal experiment skipped: largest component has "
                                 + std::to_string(lcc.node_count()) + " nodes (need "
                                 + std::to_string(cfg.resilience_min_nodes) + ")");
    } else {
        for (auto s : {RemovalStrategy::BetweennessStatic, RemovalStrategy::DegreeStatic, RemovalStrategy::Random})
            traces.push_back(removal_experiment(lcc, s, rc));
        for (const auto& t : traces)
            doc["traces"].push_back(to_json(t));
        doc["critical_threshold"] = to_json(critical_threshold(dapp.name, traces));
    }
    write_json_file(dir / kResilience, doc);
    write_stream(dir / "resilience.csv", [&](std::ostream& o) { write_trace_csv(o, traces); });
}

std::optional<Json> read_if_present(const fs::path& path)
{
    if (!fs::exists(path))
        return std::nullopt;
    return read_json_file(path);
}

void write_charts(const fs::path& dir, const ChartOutput& charts)
{
    fs::create_directories(dir);
    for (const auto& [name, svg] : charts.files)
        write_text_file(dir / name, svg);
}

void stage_report(const DappManifest& dapp, const fs::path& dir, std::uint64_t seed)
{
    const Json metrics = read_json_file(dir / kMetrics);
    const Json build = read_json_file(dir / kBuildSummary);
    const Json backbone = read_json_file(dir / kBackboneSummary);
    const auto nulls = read_if_present(dir / kNullModels);
    const auto resilience = read_if_present(dir / kResilience);
    const auto extract = read_if_present(dir / kExtractSummary);

    Json doc = {{"schema_version", kSchemaVersion},
                {"dapp", dapp_json(dapp)},
                {"extraction", extract ? *extract : Json(nullptr)},
                {"build", build},
                {"backbone", backbone},
                {"metrics", metrics.at("networks")},
                {"null_models", nulls ? *nulls : Json(nullptr)},
                {"resilience", resilience ? *resilience : Json(nullptr)}};
    for (const char* key : {"extraction", "build", "backbone"})
        if (doc[key].is_object())
            doc[key].erase("schema_version");
    for (const char* key : {"null_models", "resilience"}) {
        if (doc[key].is_object()) {
            doc[key].erase("schema_version");
            doc[key].erase("dapp");
        }
    }
    write_json_file(dir / kReport, doc);

    // Graph exports with node attributes.
    const std::uint64_t louvain_seed = derive_seed(seed, "louvain");
    for (const auto& [file, name] : {std::pair{kContractGraph, "contract_graph"}, std::pair{kBackboneGraph, "function_backbone"}}) {
        const WeightedDigraph g = load_graph(dir / file);
        const NodeAttributes attrs = compute_node_attributes(g, louvain_seed);
        export_graph_file((dir / (std::string(name) + ".dot")).string(), g, GraphFormat::Dot, attrs);
        export_graph_file((dir / (std::string(name) + ".graphml")).string(), g, GraphFormat::GraphML, attrs);
    }

    ChartData data;
    data.title = dapp.name;
    const MetricsReport cm = metrics_from_json(metrics.at("networks").at("contract"));
    const MetricsReport bm = metrics_from_json(metrics.at("networks").at("function_backbone"));
    data.degree_histograms.emplace_back("contract network", cm.degree_histogram);
    data.degree_histograms.emplace_back("function backbone", bm.degree_histogram);
    data.selfloop_ratios.emplace_back(dapp.name, cm.selfloop_only_ratio);
    const std::size_t contracts = build.at("contracts").get<std::size_t>();
    if (bm.clique_size_histogram && contracts > 0)
        data.clique_histograms.emplace_back(dapp.name, normalize_cliques(*bm.clique_size_histogram, contracts));
    if (nulls) {
        if (auto sw = small_world_from_json(nulls->at("small_world")))
            data.small_world.push_back({dapp.name, sw->real_avg_path, sw->random_avg_path_mean});
    }
    if (resilience)
        for (const auto& t : resilience->at("traces"))
            data.traces.push_back(trace_from_json(t));
    const ChartOutput charts = render_charts(data);
    write_charts(dir / "charts", charts);
}

} // namespace

std::string to_string(Stage s)
{
    switch (s) {
    case Stage::Extract: return "extract";
    case Stage::Build: return "build";
    case Stage::Filter: return "filter";
    case Stage::Metrics: return "metrics";
    case Stage::NullModels: return "nullmodels";
    case Stage::Resilience: return "resilience";
    case Stage::Report: return "report";
    }
    return "extract";
}

Stage stage_from_string(const std::string& s)
{
    for (Stage st : all_stages())
        if (to_string(st) == s)
            return st;
    throw ConfigError("unknown stage '" + s + "'");
}

const std::vector<Stage>& all_stages()
{
    static const std::vector<Stage> stages{Stage::Extract, Stage::Build, Stage::Filter, Stage::Metrics,
                                           Stage::NullModels, Stage::Resilience, Stage::Report};
    return stages;
}

void PipelineConfig::validate() const
{
    if (!(alpha_threshold > 0.0 && alpha_threshold < 1.0))
        throw ConfigError("alpha threshold must lie in (0, 1)");
    if (stages.empty())
        throw ConfigError("no stages selected");
    if (workers < 1)
        throw ConfigError("workers must be at least 1");
    if (clique_budget < 1)
        throw ConfigError("clique budget must be positive");
    if (output_dir.empty())
        throw ConfigError("output directory is empty");
    try {
        removal.validate();
        null_models.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

fs::path resolve_output_dir(const std::optional<std::string>& flag)
{
    if (flag && !flag->empty())
        return *flag;
    if (const char* env = std::getenv("DAPPNET_OUTPUT_DIR"); env && *env)
        return env;
    return "dappnet-out";
}

std::uint64_t dapp_seed(std::uint64_t root, const std::string& name)
{
    return derive_seed(root, "dapp:" + name);
}

std::vector<DappManifest> load_manifest(const fs::path& path)
{
    Json j;
    try {
        j = read_json_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("manifest: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dapps") || !j.at("dapps").is_array())
        throw ConfigError("manifest must be an object with a \"dapps\" array");
    const fs::path base = fs::absolute(path).parent_path();
    std::vector<DappManifest> out;
    std::set<std::string> names;
    for (const auto& e : j.at("dapps")) {
        DappManifest d;
        try {
            d.name = e.at("name").get<std::string>();
            d.blockchain = e.value("blockchain", "");
            d.category = e.value("category", "");
            d.source_root = e.at("source_root").get<std::string>();
            if (e.contains("notes") && !e.at("notes").is_null())
                d.notes = e.at("notes").get<std::string>();
        } catch (const Json::exception& ex) {
            throw ConfigError(std::string("manifest entry: ") + ex.what());
        }
        check_name(d.name);
        if (!names.insert(d.name).second)
            throw ConfigError("duplicate dApp name '" + d.name + "'");
        if (d.source_root.is_relative())
            d.source_root = base / d.source_root;
        d.source_root = d.source_root.lexically_normal();
        if (!fs::is_directory(d.source_root))
            throw ConfigError("source root of '" + d.name + "' does not exist: " + d.source_root.string());
        out.push_back(std::move(d));
    }
    if (out.empty())
        throw ConfigError("manifest lists no dApps");
    return out;
}

void run_stage(Stage stage, const DappManifest& dapp, const fs::path& dir, const PipelineConfig& cfg)
{
    fs::create_directories(dir);
    const std::uint64_t seed = dapp_seed(cfg.seed, dapp.name);
    switch (stage) {
    case Stage::Extract: stage_extract(dapp, dir); break;
    case Stage::Build: stage_build(dir, cfg); break;
    case Stage::Filter: stage_filter(dir, cfg); break;
    case Stage::Metrics: stage_metrics(dapp, dir, cfg, seed); break;
    case Stage::NullModels: stage_nullmodels(dapp, dir, cfg, seed); break;
    case Stage::Resilience: stage_resilience(dapp, dir, cfg, seed); break;
    case Stage::Report: stage_report(dapp, dir, seed); break;
    }
}

std::vector<Stage> plan_stages(const fs::path& dir, const std::set<Stage>& requested)
{
    std::set<Stage> plan;
    // Producing stages only join when their outputs are missing, so a
    // disabled stage never overwrites its earlier files.
    auto need = [&](auto&& self, Stage s) -> void {
        if (plan.count(s))
            return;
        plan.insert(s);
        for (Stage in : stage_inputs(s))
            if (requested.count(in) || !outputs_present(dir, in))
                self(self, in);
    };
    for (Stage s : requested)
        need(need, s);
    return {plan.begin(), plan.end()};
}

bool CorpusReport::any_ok() const
{
    return std::any_of(outcomes.begin(), outcomes.end(), [](const DappOutcome& o) { return o.ok; });
}

namespace {

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json config_json(const PipelineConfig& cfg)
{
    Json stages = Json::array();
    for (Stage s : cfg.stages)
        stages.push_back(to_string(s));
    return {{"alpha_threshold", cfg.alpha_threshold},
            {"filter_mode", to_string(cfg.filter_mode)},
            {"include_sentinel", cfg.include_sentinel},
            {"seed", cfg.seed},
            {"removal",
             {{"grid", cfg.removal.grid},
              {"trials", cfg.removal.trials},
              {"rule", to_string(cfg.removal.rule)},
              {"giant_share", cfg.removal.giant_share}}},
            {"null_models",
             {{"n_realizations", cfg.null_models.n_realizations},
              {"preserve_degree", cfg.null_models.preserve_degree},
              {"partition_source", to_string(cfg.null_models.partition_source)}}},
            {"stages", stages},
            {"clique_budget", cfg.clique_budget},
            {"small_world_min_nodes", cfg.small_world_min_nodes},
            {"resilience_min_nodes", cfg.resilience_min_nodes}};
}

Json outcome_json(const DappOutcome& o)
{
    return {{"name", o.name},
            {"ok", o.ok},
            {"stages_run", o.stages_run},
            {"failed_stage", o.failed_stage ? Json(*o.failed_stage) : Json(nullptr)},
            {"error", o.error}};
}

} // namespace

CorpusReport run_pipeline(const std::vector<DappManifest>& manifest, const PipelineConfig& cfg)
{
    cfg.validate();
    if (manifest.empty())
        throw ConfigError("manifest lists no dApps");
    std::set<std::string> names;
    for (const auto& d : manifest) {
        check_name(d.name);
        if (!names.insert(d.name).second)
            throw ConfigError("duplicate dApp name '" + d.name + "'");
    }

    std::vector<DappManifest> sorted = manifest;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.name < b.name; });

    CorpusReport report;
    report.outcomes.resize(sorted.size());
    std::mutex log_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < sorted.size(); i = next++) {
            const auto& dapp = sorted[i];
            DappOutcome& out = report.outcomes[i];
            out.name = dapp.name;
            const fs::path dir = cfg.output_dir / "dapps" / dapp.name;
            Stage current = Stage::Extract;
            try {
                fs::create_directories(dir);
                for (Stage s : plan_stages(dir, cfg.stages)) {
                    current = s;
                    run_stage(s, dapp, dir, cfg);
                    out.stages_run.push_back(to_string(s));
                }
                out.ok = true;
            } catch (const std::exception& e) {
                out.failed_stage = to_string(current);
                out.error = e.what();
                std::lock_guard lock(log_mutex);
                std::cerr << "dappnet: " << dapp.name << ": stage " << to_string(current) << " failed: " << e.what()
                          << '\n';
            }
        }
    };
    const std::size_t n_workers = std::min(cfg.workers, sorted.size());
    std::vector<std::thread> threads;
    for (std::size_t w = 1; w < n_workers; ++w)
        threads.emplace_back(worker);
    worker();
    for (auto& t : threads)
        t.join();

    write_corpus_aggregates(sorted, cfg, report);

    write_json_file(cfg.output_dir / "run_metadata.json", {{"schema_version", kSchemaVersion},
                                                           {"generated_at", utc_timestamp()},
                                                           {"config", config_json(cfg)}});
    return report;
}

void write_corpus_aggregates(const std::vector<DappManifest>& manifest, const PipelineConfig& cfg,
                             CorpusReport& report)
{
    std::vector<DappManifest> sorted = manifest;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    const fs::path out = cfg.output_dir / "corpus";
    fs::create_directories(out);

    std::ostringstream sizes, ratios, panels, degrees, retention, thresholds, small_world;
    sizes << "dapp,blockchain,category,contracts,size_class\n";
    ratios << "dapp,blockchain,category,source_functions,source_contracts,ratio\n";
    panels << "dapp,network,nodes,edges,density,selfloop_only_ratio,modularity,communities,n_components,"
              "largest_component_size,diameter,global_clustering,avg_path_length\n";
    degrees << "dapp,network,degree,count\n";
    retention << "dapp,alpha_threshold,filter_mode,nodes_before,edges_before,nodes_after,edges_after,"
                 "retention_nodes,retention_edges\n";
    thresholds << "dapp,component_nodes,threshold_fraction,removed_nodes\n";
    small_world << "dapp,nodes,edges,real_avg_path,random_avg_path_mean,real_clustering,random_clustering_mean\n";

    ChartData charts;
    charts.title = "corpus";
    std::vector<std::uint64_t> pooled;
    std::map<std::string, std::size_t> class_counts;
    std::size_t eligible = 0, disconnected_by_2pct = 0;
    double modularity_sum = 0.0;
    std::size_t modularity_n = 0;

    auto cell = [](const Json& v) { return v.is_null() ? std::string() : format_number(v.get<double>()); };

    for (const auto& dapp : sorted) {
        const fs::path dir = cfg.output_dir / "dapps" / dapp.name;
        const std::string name = csv_field(dapp.name);
        try {
            if (auto build = read_if_present(dir / kBuildSummary)) {
                const auto& sc = build->at("size_class");
                sizes << name << ',' << csv_field(dapp.blockchain) << ',' << csv_field(dapp.category) << ','
                      << build->at("contracts").get<std::size_t>() << ',' << (sc.is_null() ? "" : sc.get<std::string>())
                      << '\n';
                if (!sc.is_null())
                    ++class_counts[sc.get<std::string>()];
                ratios << name << ',' << csv_field(dapp.blockchain) << ',' << csv_field(dapp.category) << ','
                       << build->at("source_functions").get<std::size_t>() << ','
                       << build->at("source_contracts").get<std::size_t>() << ',' << cell(build->at("function_ratio"))
                       << '\n';
            }
            if (auto bb = read_if_present(dir / kBackboneSummary)) {
                retention << name << ',' << format_number(bb->at("alpha_threshold").get<double>()) << ','
                          << bb->at("filter_mode").get<std::string>() << ',' << bb->at("nodes_before").get<std::size_t>()
                          << ',' << bb->at("edges_before").get<std::size_t>() << ','
                          << bb->at("nodes_after").get<std::size_t>() << ',' << bb->at("edges_after").get<std::size_t>()
                          << ',' << format_number(bb->at("retention_nodes").get<double>()) << ','
                          << format_number(bb->at("retention_edges").get<double>()) << '\n';
            }
            if (fs::exists(dir / kBackboneGraph)) {
                const auto d = largest_component_degrees(load_graph(dir / kBackboneGraph));
                pooled.insert(pooled.end(), d.begin(), d.end());
            }
            if (auto m = read_if_present(dir / kMetrics)) {
                for (const char* net : {"contract", "function_backbone"}) {
                    const MetricsReport r = metrics_from_json(m->at("networks").at(net));
                    panels << name << ',' << net << ',' << r.nodes << ',' << r.edges << ',' << format_number(r.density)
                           << ',' << format_number(r.selfloop_only_ratio) << ',' << format_number(r.modularity) << ','
                           << r.communities << ',' << r.n_components << ',' << r.largest_component_size << ','
                           << r.diameter << ',' << format_number(r.global_clustering) << ','
                           << format_number(r.avg_path_length) << '\n';
                    for (const auto& [k, c] : r.degree_histogram)
                        degrees << name << ',' << net << ',' << k << ',' << c << '\n';
                    if (std::string(net) == "contract") {
                        charts.degree_histograms.emplace_back(dapp.name, r.degree_histogram);
                        charts.densities.push_back(r.density);
                        charts.selfloop_ratios.emplace_back(dapp.name, r.selfloop_only_ratio);
                    } else {
                        modularity_sum += r.modularity;
                        ++modularity_n;
                        if (auto build = read_if_present(dir / kBuildSummary)) {
                            const auto contracts = build->at("contracts").get<std::size_t>();
                            if (r.clique_size_histogram && contracts > 0)
                                charts.clique_histograms.emplace_back(
                                    dapp.name, normalize_cliques(*r.clique_size_histogram, contracts));
                        }
                    }
                }
            }
            if (auto nm = read_if_present(dir / kNullModels)) {
                if (auto sw = small_world_from_json(nm->at("small_world"))) {
                    small_world << name << ',' << sw->nodes << ',' << sw->edges << ','
                                << format_number(sw->real_avg_path) << ',' << format_number(sw->random_avg_path_mean)
                                << ',' << format_number(sw->real_clustering) << ','
                                << format_number(sw->random_clustering_mean) << '\n';
                    charts.small_world.push_back({dapp.name, sw->real_avg_path, sw->random_avg_path_mean});
                }
            }
            if (auto rs = read_if_present(dir / kResilience)) {
                const auto& ct = rs->at("critical_threshold");
                if (!ct.is_null()) {
                    ++eligible;
                    std::string removed;
                    for (const auto& label : ct.at("removed_nodes")) {
                        if (!removed.empty())
                            removed += ';';
                        removed += label.get<std::string>();
                    }
                    const auto& tf = ct.at("threshold_fraction");
                    if (!tf.is_null() && tf.get<double>() <= 0.02 + 1e-12)
                        ++disconnected_by_2pct;
                    thresholds << name << ',' << rs->at("component_nodes").get<std::size_t>() << ',' << cell(tf) << ','
                               << csv_field(removed) << '\n';
                }
            }
        } catch (const std::exception& e) {
            report.notices.push_back("aggregate tables: " + dapp.name + " left out: " + e.what());
        }
    }

    write_text_file(out / "size_classes.csv", sizes.str());
    write_text_file(out / "function_ratio.csv", ratios.str());
    write_text_file(out / "network_panels.csv", panels.str());
    write_text_file(out / "degree_histograms.csv", degrees.str());
    write_text_file(out / "retention.csv", retention.str());
    write_text_file(out / "thresholds.csv", thresholds.str());
    write_text_file(out / "small_world.csv", small_world.str());

    Json powerlaw = {{"schema_version", kSchemaVersion},
                     {"source", "total degrees of the largest component of every function backbone"},
                     {"samples", pooled.size()},
                     {"fit", nullptr},
                     {"notice", nullptr}};
    std::sort(pooled.begin(), pooled.end());
    if (pooled.size() >= 50 && pooled.front() >= 1)
        powerlaw["fit"] = to_json(fit_powerlaw(pooled));
    else
        powerlaw["notice"] = "power-law fit skipped: " + std::to_string(pooled.size()) + " pooled samples (need 50)";
    write_json_file(out / "powerlaw.json", powerlaw);

    Json outcomes = Json::array();
    std::size_t ok = 0;
    for (const auto& o : report.outcomes) {
        outcomes.push_back(outcome_json(o));
        ok += o.ok ? 1 : 0;
    }
    write_json_file(out / "corpus_summary.json",
                    {{"schema_version", kSchemaVersion},
                     {"dapps", sorted.size()},
                     {"succeeded", ok},
                     {"outcomes", outcomes},
                     {"size_classes", class_counts},
                     {"mean_function_backbone_modularity",
                      modularity_n ? Json(modularity_sum / static_cast<double>(modularity_n)) : Json(nullptr)},
                     {"resilience_eligible", eligible},
                     {"disconnected_by_2_percent", disconnected_by_2pct},
                     {"notices", report.notices}});

    const ChartOutput rendered = render_charts(charts);
    write_charts(out / "charts", rendered);
    // Removal traces are charted per dApp only.
    for (const auto& n : rendered.notices)
        if (n.find("resilience.svg") == std::string::npos)
            report.notices.push_back(n);
}

} // namespace dappnet
