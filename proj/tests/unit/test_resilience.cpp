#include "dappnet/resilience.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace dappnet;

namespace {

WeightedDigraph star(std::size_t leaves)
{
    WeightedDigraph g;
    g.add_node("hub");
    for (std::size_t i = 0; i < leaves; ++i)
        g.add_edge("hub", "leaf" + std::to_string(1000 + i));
    return g;
}

double first_nonzero_point(const RemovalConfig& cfg, std::size_t n)
{
    for (double f : cfg.grid)
        if (removal_count(f, n) > 0)
            return f;
    return -1.0;
}

} // namespace

TEST_SUITE("removal")
{
    TEST_CASE("removal counts")
    {
        CHECK(removal_count(0.07, 100) == 7);
        CHECK(removal_count(0.05, 21) == 1);
        CHECK(removal_count(0.04, 21) == 0);
        CHECK(removal_count(0.2, 60) == 12);
        const auto grid = default_removal_grid();
        CHECK(grid.size() == 21);
        for (std::size_t n : {21, 50, 100, 137})
            for (std::size_t i = 1; i < grid.size(); ++i)
                CHECK(removal_count(grid[i - 1], n) <= removal_count(grid[i], n));
    }

    TEST_CASE("barbell bridge goes first")
    {
        const auto g = oracle::barbell(10);
        RemovalConfig cfg;
        const auto t = removal_experiment(g, RemovalStrategy::BetweennessStatic, cfg);
        CHECK(t.removal_order.front() == "b10");
        REQUIRE(t.disconnected_at.has_value());
        CHECK(*t.disconnected_at == first_nonzero_point(cfg, 21));
        const auto c = critical_threshold("barbell", {t});
        CHECK(c.threshold_fraction == t.disconnected_at);
        CHECK(c.removed_nodes == std::vector<std::string>{"b10"});
    }

    TEST_CASE("complete graph never disconnects")
    {
        const auto g = oracle::complete(60);
        RemovalConfig cfg;
        cfg.trials = 20;
        std::vector<RemovalTrace> traces;
        for (auto s : {RemovalStrategy::BetweennessStatic, RemovalStrategy::DegreeStatic, RemovalStrategy::Random}) {
            const auto t = removal_experiment(g, s, cfg);
            CHECK_FALSE(t.disconnected_at.has_value());
            for (double l : t.avg_path_lengths)
                CHECK(l == doctest::Approx(1.0));
            traces.push_back(t);
        }
        CHECK_FALSE(critical_threshold("k60", traces).threshold_fraction.has_value());
    }

    TEST_CASE("star hub removal")
    {
        RemovalConfig cfg;
        const auto t = removal_experiment(star(100), RemovalStrategy::DegreeStatic, cfg);
        REQUIRE(t.disconnected_at.has_value());
        CHECK(*t.disconnected_at == first_nonzero_point(cfg, 101));
        CHECK(t.removal_order.front() == "hub");
    }

    TEST_CASE("any-split rule trips on a leaf's departure")
    {
        WeightedDigraph g = oracle::complete(5);
        g.add_edge("k0", "pendant");
        RemovalConfig cfg;
        cfg.grid = {0.0, 0.2};
        cfg.rule = DisconnectionRule::AnySplit;
        const auto t = removal_experiment(g, RemovalStrategy::DegreeStatic, cfg);
        CHECK(t.removal_order.front() == "k0");
        CHECK(t.disconnected_at == 0.2);
        cfg.rule = DisconnectionRule::GiantShareOrSecondPiece;
        // five survivors, four together: share 0.8 < 0.9
        CHECK(removal_experiment(g, RemovalStrategy::DegreeStatic, cfg).disconnected_at == 0.2);
        cfg.giant_share = 0.75;
        CHECK_FALSE(removal_experiment(g, RemovalStrategy::DegreeStatic, cfg).disconnected_at.has_value());
    }

    TEST_CASE("static ranking is a prefix order")
    {
        const auto g = oracle::watts_strogatz(80, 4, 0.1, 19);
        RemovalConfig cfg;
        for (auto s : {RemovalStrategy::BetweennessStatic, RemovalStrategy::DegreeStatic}) {
            const auto a = removal_experiment(g, s, cfg);
            const auto b = removal_experiment(g, s, cfg);
            CHECK(a.removal_order == b.removal_order);
            CHECK(a.avg_path_lengths == b.avg_path_lengths);
            CHECK(a.removal_order.size() >= a.removed.back());
            CHECK(std::is_sorted(a.removed.begin(), a.removed.end()));
            CHECK(a.fractions == cfg.grid);
            CHECK(a.stderr_path == std::vector<double>(cfg.grid.size(), 0.0));
        }
    }

    TEST_CASE("self-loops do not change traces")
    {
        const auto g = oracle::watts_strogatz(60, 4, 0.1, 5);
        auto looped = g;
        for (NodeId v = 0; v < looped.node_count(); v += 3)
            looped.add_edge(v, v, 2.0);
        RemovalConfig cfg;
        cfg.trials = 30;
        cfg.seed = 77;
        for (auto s : {RemovalStrategy::BetweennessStatic, RemovalStrategy::DegreeStatic, RemovalStrategy::Random}) {
            const auto a = removal_experiment(g, s, cfg);
            const auto b = removal_experiment(looped, s, cfg);
            CHECK(a.avg_path_lengths == b.avg_path_lengths);
            CHECK(a.giant_share == b.giant_share);
            CHECK(a.disconnected_at == b.disconnected_at);
        }
    }

    TEST_CASE("random estimator approaches the mean over tie-breaking orders")
    {
        // On a cycle every node ties, so the static order is the label order.
        // Averaging static traces over random relabelings gives the expected
        // trace under a uniform removal order.
        const std::size_t n = 60;
        RemovalConfig cfg;
        cfg.trials = 200;
        cfg.seed = 2;
        std::mt19937_64 rng(90);
        std::vector<double> mean(cfg.grid.size(), 0.0);
        const int relabelings = 200;
        for (int r = 0; r < relabelings; ++r) {
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            WeightedDigraph g;
            for (std::size_t i = 0; i < n; ++i)
                g.add_node("c" + std::to_string(100 + perm[i]));
            for (NodeId i = 0; i < n; ++i)
                g.add_edge(i, (i + 1) % n);
            const auto t = removal_experiment(g, RemovalStrategy::BetweennessStatic, cfg);
            for (std::size_t k = 0; k < mean.size(); ++k)
                mean[k] += t.avg_path_lengths[k] / relabelings;
        }
        WeightedDigraph cycle;
        for (NodeId i = 0; i < n; ++i)
            cycle.add_edge("c" + std::to_string(100 + i), "c" + std::to_string(100 + (i + 1) % n));
        const auto random = removal_experiment(cycle, RemovalStrategy::Random, cfg);
        for (std::size_t k = 0; k < mean.size(); ++k)
            CHECK(std::abs(random.avg_path_lengths[k] - mean[k]) <= 0.1 * mean[k]);
    }

    TEST_CASE("random trace bookkeeping")
    {
        RemovalConfig cfg;
        cfg.trials = 25;
        cfg.seed = 6;
        const auto t = removal_experiment(oracle::barbell(10), RemovalStrategy::Random, cfg);
        CHECK(t.trials == 25);
        CHECK(t.seed == 6);
        REQUIRE(t.trial_giant_share.size() == 25);
        for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
            double m = 0.0;
            for (const auto& row : t.trial_giant_share)
                m += row[k] / 25.0;
            CHECK(t.giant_share[k] == doctest::Approx(m));
        }
        CHECK(t.removal_order.empty());
        CHECK(removal_experiment(oracle::barbell(10), RemovalStrategy::Random, cfg).avg_path_lengths ==
              t.avg_path_lengths);
    }

    TEST_CASE("argument errors")
    {
        RemovalConfig cfg;
        cfg.grid = {0.0, 0.3};
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
        cfg.grid = {0.1, 0.05};
        CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
        cfg.grid = {-0.01, 0.05};
        CHECK_THROWS_AS(removal_experiment(oracle::complete(4), RemovalStrategy::DegreeStatic, cfg),
                        std::invalid_argument);
        WeightedDigraph split;
        split.add_edge("a", "b");
        split.add_edge("c", "d");
        CHECK_THROWS_AS(removal_experiment(split, RemovalStrategy::DegreeStatic, RemovalConfig{}),
                        std::invalid_argument);
        CHECK_THROWS_AS(removal_experiment(WeightedDigraph{}, RemovalStrategy::DegreeStatic, RemovalConfig{}),
                        std::invalid_argument);
        RemovalTrace random;
        random.strategy = RemovalStrategy::Random;
        CHECK_THROWS_AS(critical_threshold("x", {random}), std::invalid_argument);
    }

    TEST_CASE("names")
    {
        CHECK(to_string(RemovalStrategy::BetweennessStatic) == "betweenness-static");
        CHECK(removal_strategy_from_string("random") == RemovalStrategy::Random);
        CHECK(disconnection_rule_from_string("any-split") == DisconnectionRule::AnySplit);
        CHECK_THROWS_AS(removal_strategy_from_string("adaptive"), std::invalid_argument);
    }
}
