#include "dappnet/backbone.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <set>

using namespace dappnet;

namespace {

std::set<std::pair<std::string, std::string>> edge_labels(const WeightedDigraph& g)
{
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [key, w] : g.edges())
        out.insert({g.label(key.first), g.label(key.second)});
    return out;
}

} // namespace

TEST_SUITE("edge alpha")
{
    TEST_CASE("whole strength on one edge")
    {
        CHECK(*edge_alpha(3.0, 3.0, 5) == 0.0);
    }

    TEST_CASE("uniform split over four edges")
    {
        CHECK(*edge_alpha(1.0, 4.0, 4) == doctest::Approx(0.421875).epsilon(1e-15));
        CHECK(*edge_alpha(1.0, 4.0, 4) == doctest::Approx(1.0 - oracle::alpha_cdf_integral(0.25, 4)).epsilon(1e-12));
    }

    TEST_CASE("degree one has no null model")
    {
        CHECK_FALSE(edge_alpha(2.0, 2.0, 1).has_value());
    }

    TEST_CASE("argument errors")
    {
        CHECK_THROWS_AS(edge_alpha(0.0, 1.0, 2), std::invalid_argument);
        CHECK_THROWS_AS(edge_alpha(1.0, 0.0, 2), std::invalid_argument);
        CHECK_THROWS_AS(edge_alpha(2.0, 1.0, 2), std::invalid_argument);
        CHECK_THROWS_AS(edge_alpha(1.0, 1.0, 0), std::invalid_argument);
    }

    TEST_CASE("self-loops count on both tallies")
    {
        WeightedDigraph g;
        g.add_edge("a", "a", 1.0);
        g.add_edge("a", "b", 3.0);
        const auto s = edge_significances(g);
        REQUIRE(s.size() == 2);
        CHECK(s[0].p_out == doctest::Approx(0.25));
        CHECK(s[0].p_in == doctest::Approx(1.0));
        CHECK_FALSE(s[0].alpha_in.has_value()); // a has in-degree 1
        CHECK(*s[0].alpha_out == doctest::Approx(0.75));
    }
}

TEST_SUITE("filter")
{
    TEST_CASE("dominant edge of a star survives")
    {
        WeightedDigraph g;
        g.add_edge("hub", "big", 100.0);
        for (int i = 0; i < 9; ++i)
            g.add_edge("hub", "leaf" + std::to_string(i), 1.0);
        // Each leaf has in-degree 1 and would survive in either-direction
        // mode, so test the source side alone.
        const auto r = filter_graph(g, 0.05, FilterMode::OutOnly);
        CHECK(edge_labels(r.filtered) == std::set<std::pair<std::string, std::string>>{{"hub", "big"}});
    }

    TEST_CASE("uniform out-weights are all removed")
    {
        for (std::size_t k = 2; k <= 8; ++k) {
            WeightedDigraph g;
            for (std::size_t i = 0; i < k + 1; ++i)
                for (std::size_t j = 1; j <= k; ++j)
                    g.add_edge("n" + std::to_string(i), "n" + std::to_string((i + j) % (k + 1)), 1.0);
            const auto r = filter_graph(g, 0.05);
            CHECK(r.filtered.empty());
            CHECK(r.retention_nodes == 0.0);
        }
    }

    TEST_CASE("single edge survives")
    {
        WeightedDigraph g;
        g.add_edge("a", "b", 0.3);
        const auto r = filter_graph(g, 0.05);
        CHECK(r.filtered.edge_count() == 1);
        CHECK(r.retention_nodes == 1.0);
        CHECK(r.retention_edges == 1.0);
    }

    TEST_CASE("empty graph and bad thresholds")
    {
        const auto r = filter_graph(WeightedDigraph{}, 0.05);
        CHECK(r.filtered.empty());
        CHECK(r.nodes_before == 0);
        WeightedDigraph g;
        g.add_edge("a", "b");
        CHECK_THROWS_AS(filter_graph(g, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(filter_graph(g, 1.0), std::invalid_argument);
    }

    TEST_CASE("out-only keeps a subset of either-direction")
    {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 30; ++i) {
            const auto g = oracle::random_weighted(3 + oracle::below(rng, 10), 0.4, rng);
            const auto out = edge_labels(filter_graph(g, 0.2, FilterMode::OutOnly).filtered);
            const auto either = edge_labels(filter_graph(g, 0.2).filtered);
            for (const auto& e : out)
                CHECK(either.count(e) == 1);
        }
    }

    TEST_CASE("random graph properties")
    {
        std::mt19937_64 rng(17);
        for (int i = 0; i < 40; ++i) {
            const auto g = oracle::random_weighted(2 + oracle::below(rng, 15), 0.3, rng);
            const auto low = filter_graph(g, 0.01);
            const auto high = filter_graph(g, 0.3);
            const auto all = edge_labels(g);
            for (const auto& e : edge_labels(low.filtered)) {
                CHECK(edge_labels(high.filtered).count(e) == 1);
                CHECK(all.count(e) == 1);
            }
            CHECK(low.retention_nodes >= 0.0);
            CHECK(high.retention_nodes <= 1.0);
            CHECK(high.retention_edges <= 1.0);
            // weights carried over unchanged
            for (const auto& [key, w] : high.filtered.edges())
                CHECK(w == g.weight(*g.find(high.filtered.label(key.first)), *g.find(high.filtered.label(key.second))));
        }
    }
}
