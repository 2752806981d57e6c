#include "dappnet/metrics.hpp"
#include "dappnet/netbuild.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace dappnet;

namespace {

SimpleGraph path_graph(std::size_t n)
{
    SimpleGraph g(n);
    for (NodeId i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

SimpleGraph star(std::size_t leaves)
{
    SimpleGraph g(leaves + 1);
    for (NodeId i = 1; i <= leaves; ++i)
        g.add_edge(0, i);
    return g;
}

SimpleGraph complete_simple(std::size_t n)
{
    SimpleGraph g(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

} // namespace

TEST_SUITE("degree and density")
{
    TEST_CASE("self-loop node and directed cycle")
    {
        WeightedDigraph a;
        a.add_edge("x", "x");
        CHECK(degree_stats(a) == std::map<std::size_t, std::size_t>{{2, 1}});
        WeightedDigraph c;
        c.add_edge("a", "b");
        c.add_edge("b", "c");
        c.add_edge("c", "a");
        CHECK(degree_stats(c) == std::map<std::size_t, std::size_t>{{2, 3}});
    }

    TEST_CASE("projected toy graph histogram")
    {
        std::vector<CallRecord> r;
        auto add = [&](const std::string& f, const std::string& c, int times) {
            for (int i = 0; i < times; ++i)
                r.push_back({"x.sol", "T", f, c});
        };
        add("F1", "C1", 1);
        add("F2", "C1", 3);
        add("F2", "C2", 2);
        add("F3", "C2", 1);
        add("F4", "C2", 4);
        add("F4", "C3", 2);
        const auto g = project_functions(build_bipartite(r));
        CHECK(degree_stats(g) == std::map<std::size_t, std::size_t>{{4, 1}, {6, 2}, {8, 1}});
    }

    TEST_CASE("density conventions")
    {
        WeightedDigraph k4;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j)
                    k4.add_edge(std::to_string(i), std::to_string(j));
        CHECK(density(k4) == 1.0);
        WeightedDigraph two;
        two.add_edge("A", "B");
        two.add_edge("B", "A");
        two.add_edge("A", "A");
        two.add_edge("B", "B");
        CHECK(density(two) == 2.0);
        WeightedDigraph one;
        one.add_edge("A", "A");
        CHECK(density(one) == 1.0);
        WeightedDigraph bare;
        bare.add_node("A");
        CHECK(density(bare) == 0.0);
        CHECK(density(WeightedDigraph{}) == 0.0);
    }

    TEST_CASE("self-loop-only ratio")
    {
        WeightedDigraph g;
        for (int i = 0; i < 6; ++i)
            g.add_edge("s" + std::to_string(i), "s" + std::to_string(i));
        for (int i = 0; i < 4; ++i)
            g.add_edge("c" + std::to_string(i), "c" + std::to_string((i + 1) % 4));
        CHECK(selfloop_only_ratio(g) == doctest::Approx(0.6));
        WeightedDigraph none;
        none.add_edge("a", "b");
        CHECK(selfloop_only_ratio(none) == 0.0);
        WeightedDigraph all;
        all.add_edge("a", "a");
        all.add_edge("b", "b");
        CHECK(selfloop_only_ratio(all) == 1.0);
    }
}

TEST_SUITE("components and paths")
{
    TEST_CASE("components largest first")
    {
        SimpleGraph g(7);
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        g.add_edge(3, 4);
        g.add_edge(4, 5);
        const auto c = components(g);
        REQUIRE(c.size() == 3);
        CHECK(c[0] == std::vector<NodeId>{2, 3, 4, 5});
        CHECK(c[1] == std::vector<NodeId>{0, 1});
        CHECK(c[2] == std::vector<NodeId>{6});
        CHECK(components(SimpleGraph{}).empty());
    }

    TEST_CASE("weak components of a digraph")
    {
        WeightedDigraph g;
        g.add_edge("a", "b");
        g.add_edge("c", "b");
        g.add_edge("d", "e");
        CHECK(components(g).size() == 2);
    }

    TEST_CASE("path, complete and star")
    {
        const auto p4 = path_stats(path_graph(4));
        CHECK(p4.diameter == 3);
        CHECK(p4.avg_path_length == doctest::Approx(5.0 / 3.0));
        const auto k5 = path_stats(complete_simple(5));
        CHECK(k5.diameter == 1);
        CHECK(k5.avg_path_length == 1.0);
        CHECK(path_stats(star(4)).diameter == 2);
        const auto single = path_stats(SimpleGraph(1));
        CHECK(single.diameter == 0);
        CHECK_FALSE(single.avg_defined);
        CHECK_THROWS_AS(path_stats(SimpleGraph(2)), std::invalid_argument);
    }

    TEST_CASE("diameter bounds the mean on random components")
    {
        std::mt19937_64 rng(21);
        for (int i = 0; i < 50; ++i) {
            const auto g = oracle::gnp(2 + oracle::below(rng, 20), 0.3, rng);
            const auto comp = g.induced(components(g)[0]);
            if (comp.node_count() < 2)
                continue;
            const auto s = path_stats(comp);
            CHECK(static_cast<double>(s.diameter) >= s.avg_path_length - 1e-12);
            CHECK(s.avg_path_length >= 1.0);
        }
    }
}

TEST_SUITE("betweenness")
{
    TEST_CASE("examples")
    {
        const auto p3 = betweenness(path_graph(3));
        CHECK(p3[1] == doctest::Approx(1.0));
        for (double b : betweenness(complete_simple(6)))
            CHECK(b == 0.0);
        const auto s = betweenness(star(5));
        CHECK(s[0] == doctest::Approx(1.0));
        for (NodeId i = 1; i <= 5; ++i)
            CHECK(s[i] == 0.0);
        CHECK(betweenness(SimpleGraph(2)) == std::vector<double>{0.0, 0.0});
    }

    TEST_CASE("matches path enumeration on small graphs")
    {
        std::mt19937_64 rng(4);
        for (int i = 0; i < 100; ++i) {
            const auto g = oracle::gnp(3 + oracle::below(rng, 6), 0.2 + 0.6 * oracle::unit(rng), rng);
            const auto got = betweenness(g);
            const auto want = oracle::betweenness(g);
            for (std::size_t v = 0; v < got.size(); ++v)
                CHECK(got[v] == doctest::Approx(want[v]).epsilon(1e-12));
        }
    }

    TEST_CASE("per component scaling")
    {
        SimpleGraph g(6);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(3, 4);
        g.add_edge(4, 5);
        const auto b = betweenness_by_component(g);
        CHECK(b[1] == doctest::Approx(1.0));
        CHECK(b[4] == doctest::Approx(1.0));
        CHECK(betweenness(g)[1] == doctest::Approx(0.1));
    }
}

TEST_SUITE("clustering")
{
    TEST_CASE("triangle, star, K4 minus an edge")
    {
        const auto t = clustering(complete_simple(3));
        CHECK(t.global == 1.0);
        for (double c : t.local)
            CHECK(c == 1.0);
        const auto s = clustering(star(4));
        CHECK(s.global == 0.0);
        SimpleGraph k4m(4);
        k4m.add_edge(0, 1);
        k4m.add_edge(0, 2);
        k4m.add_edge(0, 3);
        k4m.add_edge(1, 2);
        k4m.add_edge(1, 3);
        // two triangles over eight connected triples (centres of degree 3, 3, 2, 2)
        CHECK(clustering(k4m).global == doctest::Approx(0.75));
    }

    TEST_CASE("transitivity two ways")
    {
        std::mt19937_64 rng(9);
        for (int i = 0; i < 50; ++i) {
            const auto g = oracle::gnp(3 + oracle::below(rng, 25), 0.3, rng);
            // triangle census via adjacency triples
            std::size_t closed = 0, triples = 0;
            for (NodeId v = 0; v < g.node_count(); ++v) {
                const auto& nb = g.adj[v];
                triples += nb.size() * (nb.size() - (nb.empty() ? 0 : 1)) / 2;
                for (std::size_t a = 0; a < nb.size(); ++a)
                    for (std::size_t b = a + 1; b < nb.size(); ++b)
                        closed += g.has_edge(nb[a], nb[b]);
            }
            const double want = triples ? static_cast<double>(closed) / static_cast<double>(triples) : 0.0;
            CHECK(std::abs(clustering(g).global - want) < 1e-12);
            std::size_t census = 0;
            for (auto t : triangles_per_node(g))
                census += t;
            CHECK(census == closed);
        }
    }
}

TEST_SUITE("louvain")
{
    WeightedDigraph two_cliques_bridged()
    {
        WeightedDigraph g;
        for (int base : {0, 4})
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    g.add_edge("v" + std::to_string(base + i), "v" + std::to_string(base + j));
        g.add_edge("v3", "v4");
        return g;
    }

    TEST_CASE("two bridged 4-cliques match the best bipartition")
    {
        const auto g = two_cliques_bridged();
        std::vector<std::vector<double>> a(8, std::vector<double>(8, 0.0));
        for (const auto& [key, w] : g.edges()) {
            a[key.first][key.second] += w;
            a[key.second][key.first] += w;
        }
        const auto [best, arg] = oracle::best_bipartition(a);
        const auto p = louvain(g, 7);
        CHECK(p.modularity > 0.3);
        CHECK(p.modularity == doctest::Approx(best).epsilon(1e-12));
        CHECK(p.community_count() == 2);
        for (int i = 0; i < 8; ++i)
            CHECK((p.community[i] == p.community[0]) == (arg[i] == arg[0]));
        CHECK(modularity(g, p.community) == doctest::Approx(oracle::modularity(a, p.community)));
    }

    TEST_CASE("complete graph stays one community")
    {
        const auto p = louvain(oracle::complete(7), 1);
        CHECK(p.community_count() == 1);
        CHECK(std::abs(p.modularity) < 1e-12);
    }

    TEST_CASE("disconnected triangles")
    {
        WeightedDigraph g;
        for (int base : {0, 3})
            for (int i = 0; i < 3; ++i)
                g.add_edge("t" + std::to_string(base + i), "t" + std::to_string(base + (i + 1) % 3));
        CHECK(louvain(g, 0).community_count() == 2);
    }

    TEST_CASE("empty and edgeless graphs")
    {
        const auto e = louvain(WeightedDigraph{}, 0);
        CHECK(e.community.empty());
        CHECK(e.modularity == 0.0);
        WeightedDigraph g;
        g.add_node("a");
        g.add_node("b");
        CHECK(louvain(g, 0).modularity == 0.0);
    }

    TEST_CASE("modularity in range, deterministic, consistent with the oracle")
    {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 40; ++i) {
            const auto g = oracle::random_weighted(2 + oracle::below(rng, 25), 0.15, rng);
            if (g.edge_count() == 0)
                continue;
            const auto p = louvain(g, 99);
            CHECK(p.modularity >= -0.5);
            CHECK(p.modularity <= 1.0);
            CHECK(louvain(g, 99).community == p.community);
            std::vector<std::vector<double>> a(g.node_count(), std::vector<double>(g.node_count(), 0.0));
            for (const auto& [key, w] : g.edges()) {
                a[key.first][key.second] += w;
                a[key.second][key.first] += w;
            }
            CHECK(p.modularity == doctest::Approx(oracle::modularity(a, p.community)).epsilon(1e-9));
            // no worse than everything in one community
            CHECK(p.modularity >= -1e-12);
        }
    }

    TEST_CASE("mismatched partition")
    {
        CHECK_THROWS_AS(modularity(oracle::complete(3), {0, 0}), std::invalid_argument);
    }
}

TEST_SUITE("cliques")
{
    TEST_CASE("K4 and bowtie")
    {
        CHECK(clique_size_histogram(complete_simple(4)) == std::map<std::size_t, std::size_t>{{4, 1}});
        SimpleGraph bowtie(5);
        bowtie.add_edge(0, 1);
        bowtie.add_edge(1, 2);
        bowtie.add_edge(0, 2);
        bowtie.add_edge(2, 3);
        bowtie.add_edge(3, 4);
        bowtie.add_edge(2, 4);
        CHECK(clique_size_histogram(bowtie) == std::map<std::size_t, std::size_t>{{3, 2}});
    }

    TEST_CASE("matches subset enumeration")
    {
        std::mt19937_64 rng(12);
        for (int i = 0; i < 30; ++i) {
            const auto g = oracle::gnp(1 + oracle::below(rng, 12), 0.5, rng);
            CHECK(clique_size_histogram(g) == oracle::clique_histogram(g));
        }
    }

    TEST_CASE("cliques are sorted and maximal")
    {
        std::mt19937_64 rng(13);
        const auto g = oracle::gnp(14, 0.5, rng);
        for (const auto& c : maximal_cliques(g)) {
            CHECK(std::is_sorted(c.begin(), c.end()));
            for (std::size_t a = 0; a < c.size(); ++a)
                for (std::size_t b = a + 1; b < c.size(); ++b)
                    CHECK(g.has_edge(c[a], c[b]));
        }
    }

    TEST_CASE("budget")
    {
        std::mt19937_64 rng(14);
        const auto g = oracle::gnp(30, 0.5, rng);
        CHECK_THROWS_AS(maximal_cliques(g, 5), CliqueBudgetExceeded);
    }
}

TEST_SUITE("spearman")
{
    TEST_CASE("values")
    {
        CHECK(*spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
        CHECK(*spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
        // ties take average ranks: x ranks 1.5 1.5 3, y ranks 1 2 3
        CHECK(*spearman({1, 1, 2}, {1, 2, 3}) == doctest::Approx(0.8660254037844386));
        CHECK_FALSE(spearman({1, 1, 1}, {1, 2, 3}).has_value());
        CHECK_FALSE(spearman({1}, {1}).has_value());
    }
}
