#include "dappnet/charts.hpp"
#include "dappnet/export.hpp"
#include "dappnet/report.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace dappnet;

namespace {

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1))
        ++n;
    return n;
}

} // namespace

TEST_SUITE("export")
{
    TEST_CASE("two nodes one edge as DOT")
    {
        WeightedDigraph g;
        g.add_edge("A", "B", 2.5);
        std::ostringstream out;
        export_graph(out, g, GraphFormat::Dot, {});
        CHECK(out.str() == "digraph dappnet {\n  n0 [label=\"A\"];\n  n1 [label=\"B\"];\n  n0 -> n1 [weight=2.5];\n}\n");
    }

    TEST_CASE("self-loop present in GraphML with attributes")
    {
        WeightedDigraph g;
        g.add_edge("A", "A", 3.0);
        g.add_edge("A", "B&C", 1.0);
        const auto attrs = compute_node_attributes(g, 1);
        std::ostringstream out;
        export_graph(out, g, GraphFormat::GraphML, attrs);
        const auto s = out.str();
        CHECK(s.find("source=\"n0\" target=\"n0\"") != std::string::npos);
        CHECK(s.find("B&amp;C") != std::string::npos);
        CHECK(count(s, "<data key=\"community\">") == 2);
        CHECK(count(s, "<edge ") == 2);
    }

    TEST_CASE("DOT node attribute block carries community ids")
    {
        const auto g = oracle::barbell(4);
        const auto attrs = compute_node_attributes(g, 3);
        std::ostringstream out;
        export_graph(out, g, GraphFormat::Dot, attrs);
        CHECK(count(out.str(), "community=") == g.node_count());
        CHECK(count(out.str(), "betweenness=") == g.node_count());
        std::ostringstream again;
        export_graph(again, g, GraphFormat::Dot, compute_node_attributes(g, 3));
        CHECK(again.str() == out.str());
    }

    TEST_CASE("edge CSV round trip")
    {
        WeightedDigraph g;
        g.add_edge("A::f", "B,odd", 0.125);
        g.add_edge("B,odd", "B,odd", 1.0 / 3.0);
        std::ostringstream out;
        export_graph(out, g, GraphFormat::EdgeCsv, {});
        CHECK(out.str().rfind("source,target,weight\n", 0) == 0);
        std::istringstream in(out.str());
        CHECK(read_edge_csv(in) == g);
        std::istringstream bad("from,to\n");
        CHECK_THROWS_AS(read_edge_csv(bad), std::runtime_error);
    }

    TEST_CASE("attribute sizes are checked")
    {
        NodeAttributes a;
        a.degree = {1, 2, 3};
        std::ostringstream out;
        CHECK_THROWS_AS(export_graph(out, oracle::complete(2), GraphFormat::Dot, a), std::invalid_argument);
        CHECK_THROWS_AS(export_graph_file("/nonexistent/dir/x.dot", oracle::complete(2), GraphFormat::Dot, {}),
                        std::runtime_error);
    }
}

TEST_SUITE("charts")
{
    TEST_CASE("only a degree histogram gives exactly one SVG")
    {
        ChartData d;
        d.degree_histograms.push_back({"x", {{1, 3}, {2, 5}, {4, 1}}});
        const auto out = render_charts(d);
        REQUIRE(out.files.size() == 1);
        CHECK(out.files[0].first == "degree_pdf.svg");
        CHECK(out.files[0].second.rfind("<svg", 0) == 0);
        CHECK(out.notices.size() == 5);
    }

    TEST_CASE("empty input renders nothing")
    {
        const auto out = render_charts(ChartData{});
        CHECK(out.files.empty());
        CHECK(out.notices == std::vector<std::string>{"no chart sections present; nothing rendered"});
    }

    TEST_CASE("cross at the disconnection point and stable bytes")
    {
        RemovalConfig cfg;
        ChartData d;
        d.traces.push_back(removal_experiment(oracle::barbell(10), RemovalStrategy::BetweennessStatic, cfg));
        cfg.trials = 10;
        d.traces.push_back(removal_experiment(oracle::barbell(10), RemovalStrategy::Random, cfg));
        d.small_world.push_back({"a", 3.0, 2.5});
        const auto out = render_charts(d);
        REQUIRE(out.files.size() == 2);
        const auto& svg = out.files[1].second;
        CHECK(out.files[1].first == "resilience.svg");
        CHECK(count(svg, "class=\"disconnected\"") >= 1);
        CHECK(svg.find("#ff7f0e") != std::string::npos);
        CHECK(svg.find("#7b3294") != std::string::npos);
        CHECK(count(out.files[0].second, "class=\"real\"") == 1);
        CHECK(render_charts(d).files == out.files);
    }
}

TEST_SUITE("report json")
{
    TEST_CASE("metrics report round trip")
    {
        auto g = oracle::watts_strogatz(60, 4, 0.1, 2);
        g.add_edge("w0", "w0");
        const auto r = compute_metrics(g, {5, 1'000'000, true});
        CHECK(r.nodes == 60);
        CHECK(r.n_components == 1);
        CHECK(r.largest_component_size == 60);
        std::size_t total = 0;
        for (const auto& [k, c] : r.degree_histogram)
            total += c;
        CHECK(total == r.nodes);
        CHECK(r.diameter >= 1);
        REQUIRE(r.powerlaw.has_value());
        REQUIRE(r.clique_size_histogram.has_value());
        const auto back = metrics_from_json(to_json(r));
        CHECK(to_json(back) == to_json(r));
    }

    TEST_CASE("small networks skip the fit with a notice")
    {
        const auto r = compute_metrics(oracle::complete(5));
        CHECK_FALSE(r.powerlaw.has_value());
        CHECK_FALSE(r.notices.empty());
        CHECK(r.clique_size_histogram == std::map<std::size_t, std::size_t>{{5, 1}});
    }

    TEST_CASE("clique budget overflow leaves the histogram empty")
    {
        std::mt19937_64 rng(1);
        const auto g = oracle::to_digraph(oracle::gnp(30, 0.5, rng));
        MetricsOptions opt;
        opt.clique_budget = 3;
        const auto r = compute_metrics(g, opt);
        CHECK_FALSE(r.clique_size_histogram.has_value());
        CHECK_FALSE(r.notices.empty());
    }

    TEST_CASE("graph and trace round trips")
    {
        WeightedDigraph g;
        g.add_edge("a", "b", 0.1);
        g.add_edge("b", "b", 2.0);
        g.add_node("c");
        CHECK(graph_from_json(graph_to_json(g)) == g);
        RemovalConfig cfg;
        cfg.trials = 5;
        const auto t = removal_experiment(oracle::barbell(10), RemovalStrategy::Random, cfg);
        CHECK(to_json(trace_from_json(to_json(t))) == to_json(t));
    }

    TEST_CASE("normalized cliques and CSV helpers")
    {
        const auto n = normalize_cliques({{3, 4}, {5, 1}}, 4);
        CHECK(n.at(3) == 1.0);
        CHECK(n.at(5) == 0.25);
        std::ostringstream h;
        write_histogram_csv(h, "degree", {{1, 2}, {3, 4}});
        CHECK(h.str() == "degree,count\n1,2\n3,4\n");
        std::ostringstream t;
        RemovalConfig cfg;
        cfg.grid = {0.0, 0.1};
        write_trace_csv(t, {removal_experiment(oracle::barbell(10), RemovalStrategy::DegreeStatic, cfg)});
        CHECK(t.str().rfind("fraction,value,strategy,trial_mean,stderr\n0,", 0) == 0);
        CHECK(count(t.str(), "\n") == 3);
    }
}
