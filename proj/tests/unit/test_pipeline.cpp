#include "dappnet/pipeline.hpp"
#include "dappnet/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace dappnet;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
    {
        path = fs::temp_directory_path() / ("dappnet-pipeline-" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fixtures()
{
    return DAPPNET_FIXTURES;
}

DappManifest auction()
{
    DappManifest d;
    d.name = "auction";
    d.blockchain = "Ethereum";
    d.category = "Marketplaces";
    d.source_root = fixtures() / "auction";
    return d;
}

PipelineConfig quick(const fs::path& out)
{
    PipelineConfig cfg;
    cfg.output_dir = out;
    cfg.removal.trials = 10;
    cfg.null_models.n_realizations = 5;
    return cfg;
}

} // namespace

TEST_SUITE("manifest")
{
    TEST_CASE("fixture corpus loads with resolved roots")
    {
        const auto m = load_manifest(fixtures() / "corpus.json");
        REQUIRE(m.size() == 3);
        CHECK(m[0].name == "weth9mock");
        CHECK(m[0].notes.has_value());
        CHECK(fs::is_directory(m[0].source_root));
        CHECK(m[0].source_root.is_absolute());
    }

    TEST_CASE("invalid manifests are configuration errors")
    {
        TempDir d("manifest");
        auto write = [&](const std::string& text) {
            std::ofstream(d.path / "m.json") << text;
            return d.path / "m.json";
        };
        CHECK_THROWS_AS(load_manifest(write("{\"dapps\": []}")), ConfigError);
        CHECK_THROWS_AS(load_manifest(write("{\"apps\": []}")), ConfigError);
        CHECK_THROWS_AS(load_manifest(write("{not json")), ConfigError);
        CHECK_THROWS_AS(load_manifest(d.path / "missing.json"), ConfigError);
        fs::create_directories(d.path / "src");
        CHECK_THROWS_AS(load_manifest(write(R"({"dapps": [{"name": "a", "source_root": "src"},
                                                          {"name": "a", "source_root": "src"}]})")),
                        ConfigError);
        CHECK_THROWS_AS(load_manifest(write(R"({"dapps": [{"name": "../x", "source_root": "src"}]})")), ConfigError);
        CHECK_THROWS_AS(load_manifest(write(R"({"dapps": [{"name": "a", "source_root": "nope"}]})")), ConfigError);
        CHECK(load_manifest(write(R"({"dapps": [{"name": "a", "source_root": "src"}]})")).size() == 1);
    }

    TEST_CASE("config validation")
    {
        PipelineConfig cfg;
        CHECK_NOTHROW(cfg.validate());
        cfg.alpha_threshold = 1.5;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg = PipelineConfig{};
        cfg.stages.clear();
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg = PipelineConfig{};
        cfg.workers = 0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
        cfg = PipelineConfig{};
        cfg.removal.grid = {0.5};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }

    TEST_CASE("output directory precedence")
    {
        ::unsetenv("DAPPNET_OUTPUT_DIR");
        CHECK(resolve_output_dir(std::nullopt) == "dappnet-out");
        ::setenv("DAPPNET_OUTPUT_DIR", "/tmp/from-env", 1);
        CHECK(resolve_output_dir(std::nullopt) == "/tmp/from-env");
        CHECK(resolve_output_dir(std::string("flag")) == "flag");
        ::unsetenv("DAPPNET_OUTPUT_DIR");
    }

    TEST_CASE("stage names")
    {
        for (Stage s : all_stages())
            CHECK(stage_from_string(to_string(s)) == s);
        CHECK_THROWS_AS(stage_from_string("deploy"), ConfigError);
    }
}

TEST_SUITE("pipeline")
{
    TEST_CASE("single toy dApp produces the full artifact set")
    {
        TempDir d("auction");
        const auto report = run_pipeline({auction()}, quick(d.path));
        REQUIRE(report.outcomes.size() == 1);
        CHECK(report.outcomes[0].ok);
        const fs::path dir = d.path / "dapps" / "auction";
        for (const char* f : {"calls.csv", "contracts.csv", "contract_graph.json", "contract_graph.csv",
                              "function_graph.json", "bipartite.csv", "function_backbone.json", "backbone.json",
                              "metrics.json", "null_models.json", "resilience.json", "resilience.csv", "report.json",
                              "contract_graph.dot", "contract_graph.graphml", "degree_contract.csv"})
            CHECK_MESSAGE(fs::exists(dir / f), f);
        CHECK(slurp(dir / "calls.csv") == slurp(fs::path(DAPPNET_GOLDEN) / "auction_calls.csv"));
        CHECK(fs::exists(d.path / "run_metadata.json"));
        CHECK(fs::exists(d.path / "corpus" / "size_classes.csv"));
        const auto metrics = read_json_file(dir / "metrics.json");
        CHECK(metrics.at("schema_version") == "v1");
        CHECK(metrics.at("networks").contains("contract"));
    }

    TEST_CASE("unparsable files leave an empty but successful dApp")
    {
        TempDir d("unparsable");
        fs::create_directories(d.path / "src");
        std::ofstream(d.path / "src" / "x.sol") << "contract A { function f() public { ";
        DappManifest m;
        m.name = "unparsable";
        m.source_root = d.path / "src";
        const auto report = run_pipeline({m}, quick(d.path / "out"));
        CHECK(report.any_ok());
        const auto extract = read_json_file(d.path / "out" / "dapps" / "unparsable" / "extract.json");
        CHECK(extract.dump().find("x.sol") != std::string::npos);
    }

    TEST_CASE("metrics-only run over prebuilt graphs")
    {
        TempDir d("gating");
        auto cfg = quick(d.path);
        run_pipeline({auction()}, cfg);
        const fs::path dir = d.path / "dapps" / "auction";
        const auto calls_time = fs::last_write_time(dir / "calls.csv");
        const auto graph = slurp(dir / "function_backbone.json");
        fs::remove(dir / "metrics.json");

        CHECK(plan_stages(dir, {Stage::Metrics}) == std::vector<Stage>{Stage::Metrics});
        cfg.stages = {Stage::Metrics};
        const auto report = run_pipeline({auction()}, cfg);
        CHECK(report.outcomes[0].ok);
        CHECK(report.outcomes[0].stages_run == std::vector<std::string>{"metrics"});
        CHECK(fs::exists(dir / "metrics.json"));
        CHECK(fs::last_write_time(dir / "calls.csv") == calls_time);
        CHECK(slurp(dir / "function_backbone.json") == graph);
    }

    TEST_CASE("missing inputs pull in their producers")
    {
        TempDir d("plan");
        CHECK(plan_stages(d.path, {Stage::Metrics}) ==
              std::vector<Stage>{Stage::Extract, Stage::Build, Stage::Filter, Stage::Metrics});
        CHECK(plan_stages(d.path, {Stage::Resilience}) ==
              std::vector<Stage>{Stage::Extract, Stage::Build, Stage::Filter, Stage::Resilience});
    }

    TEST_CASE("a failing dApp is reported and skipped")
    {
        TempDir d("failing");
        DappManifest broken;
        broken.name = "broken";
        broken.source_root = d.path / "vanished"; // removed after the manifest was read
        auto cfg = quick(d.path / "out");
        const auto only = run_pipeline({broken}, cfg);
        CHECK_FALSE(only.any_ok());
        REQUIRE(only.outcomes[0].failed_stage.has_value());
        CHECK(*only.outcomes[0].failed_stage == "extract");
        const auto both = run_pipeline({broken, auction()}, cfg);
        CHECK(both.any_ok());
        CHECK(both.outcomes.size() == 2);
    }

    TEST_CASE("per-dApp seeds differ by name")
    {
        CHECK(dapp_seed(1, "a") != dapp_seed(1, "b"));
        CHECK(dapp_seed(1, "a") == dapp_seed(1, "a"));
        CHECK(dapp_seed(1, "a") != dapp_seed(2, "a"));
    }

    TEST_CASE("aggregates do not depend on manifest order")
    {
        TempDir d("order");
        auto m = load_manifest(fixtures() / "corpus.json");
        auto cfg = quick(d.path / "a");
        run_pipeline(m, cfg);
        std::reverse(m.begin(), m.end());
        cfg.output_dir = d.path / "b";
        run_pipeline(m, cfg);
        for (const auto& e : fs::directory_iterator(d.path / "a" / "corpus"))
            if (e.is_regular_file())
                CHECK_MESSAGE(slurp(e.path()) == slurp(d.path / "b" / "corpus" / e.path().filename()),
                              e.path().filename().string());
    }
}
