#include "dappnet/resilience.hpp"

#include "dappnet/metrics.hpp"
#include "dappnet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dappnet {

std::string to_string(RemovalStrategy s)
{
    switch (s) {
    case RemovalStrategy::BetweennessStatic: return "betweenness-static";
    case RemovalStrategy::DegreeStatic: return "degree-static";
    case RemovalStrategy::Random: return "random";
    }
    return "random";
}

RemovalStrategy removal_strategy_from_string(const std::string& s)
{
    if (s == "betweenness-static")
        return RemovalStrategy::BetweennessStatic;
    if (s == "degree-static")
        return RemovalStrategy::DegreeStatic;
    if (s == "random")
        return RemovalStrategy::Random;
    throw std::invalid_argument("unknown removal strategy '" + s + "'");
}

std::string to_string(DisconnectionRule r)
{
    return r == DisconnectionRule::AnySplit ? "any-split" : "giant-share-or-second-piece";
}

DisconnectionRule disconnection_rule_from_string(const std::string& s)
{
    if (s == "giant-share-or-second-piece")
        return DisconnectionRule::GiantShareOrSecondPiece;
    if (s == "any-split")
        return DisconnectionRule::AnySplit;
    throw std::invalid_argument("unknown disconnection rule '" + s + "'");
}

std::vector<double> default_removal_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i)
        grid.push_back(i / 100.0);
    return grid;
}

void RemovalConfig::validate() const
{
    if (grid.empty())
        throw std::invalid_argument("removal grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 0.2 + 1e-12))
            throw std::invalid_argument("removal grid values must lie in [0, 0.2]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("removal grid must be strictly increasing");
    }
    if (trials < 1)
        throw std::invalid_argument("random removal needs at least one trial");
    if (!(giant_share > 0.0 && giant_share <= 1.0))
        throw std::invalid_argument("giant share must lie in (0, 1]");
}

std::size_t removal_count(double fraction, std::size_t n)
{
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

namespace {

struct Snapshot {
    double avg_path = 0.0;
    double giant_share = 0.0;
    bool disconnected = false;
};

Snapshot measure(const SimpleGraph& g, const std::vector<bool>& removed, const RemovalConfig& cfg)
{
    std::vector<NodeId> survivors;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!removed[v])
            survivors.push_back(v);
    Snapshot s;
    if (survivors.empty())
        return s;
    const SimpleGraph rest = g.induced(survivors);
    const auto pieces = components(rest);
    const std::size_t largest = pieces.front().size();
    const std::size_t second = pieces.size() > 1 ? pieces[1].size() : 0;
    s.giant_share = static_cast<double>(largest) / static_cast<double>(survivors.size());
    if (cfg.rule == DisconnectionRule::AnySplit)
        s.disconnected = pieces.size() > 1;
    else
        s.disconnected = s.giant_share < cfg.giant_share || second >= 2;
    s.avg_path = path_stats(rest.induced(pieces.front())).avg_path_length;
    return s;
}

std::vector<NodeId> static_ranking(const WeightedDigraph& g, const SimpleGraph& sg, RemovalStrategy strategy)
{
    std::vector<double> score(sg.node_count());
    if (strategy == RemovalStrategy::BetweennessStatic) {
        score = betweenness(sg);
    } else {
        for (NodeId v = 0; v < sg.node_count(); ++v)
            score[v] = static_cast<double>(sg.degree(v));
    }
    std::vector<NodeId> order(sg.node_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (score[a] != score[b])
            return score[a] > score[b];
        return g.label(a) < g.label(b);
    });
    return order;
}

// Removes order[0..k) cumulatively along the grid.
std::vector<Snapshot> sweep(const SimpleGraph& sg, const std::vector<NodeId>& order,
                            const std::vector<std::size_t>& counts, const RemovalConfig& cfg)
{
    std::vector<bool> removed(sg.node_count(), false);
    std::vector<Snapshot> out;
    std::size_t done = 0;
    for (std::size_t k : counts) {
        for (; done < k; ++done)
            removed[order[done]] = true;
        out.push_back(measure(sg, removed, cfg));
    }
    return out;
}

} // namespace

RemovalTrace removal_experiment(const WeightedDigraph& component, RemovalStrategy strategy, const RemovalConfig& cfg)
{
    cfg.validate();
    if (component.empty())
        throw std::invalid_argument("removal experiment needs a nonempty component");
    const SimpleGraph sg = simple_view(component);
    if (components(sg).size() != 1)
        throw std::invalid_argument("removal experiment needs a connected component");
    const std::size_t n = sg.node_count();

    RemovalTrace trace;
    trace.strategy = strategy;
    trace.fractions = cfg.grid;
    trace.seed = cfg.seed;
    for (double f : cfg.grid)
        trace.removed.push_back(removal_count(f, n));

    const std::size_t points = cfg.grid.size();
    if (strategy != RemovalStrategy::Random) {
        const auto order = static_ranking(component, sg, strategy);
        for (NodeId v : order)
            trace.removal_order.push_back(component.label(v));
        for (const auto& s : sweep(sg, order, trace.removed, cfg)) {
            trace.avg_path_lengths.push_back(s.avg_path);
            trace.stderr_path.push_back(0.0);
            trace.giant_share.push_back(s.giant_share);
            trace.disconnected_share.push_back(s.disconnected ? 1.0 : 0.0);
        }
        trace.trials = 1;
    } else {
        trace.trials = cfg.trials;
        std::vector<double> sum(points, 0.0), sum_sq(points, 0.0), share(points, 0.0), hits(points, 0.0);
        std::vector<NodeId> order(n);
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            std::iota(order.begin(), order.end(), 0);
            Rng rng(derive_seed(cfg.seed, "random-removal", t));
            shuffle(order, rng);
            const auto snaps = sweep(sg, order, trace.removed, cfg);
            std::vector<double> trial_share;
            for (std::size_t i = 0; i < points; ++i) {
                sum[i] += snaps[i].avg_path;
                sum_sq[i] += snaps[i].avg_path * snaps[i].avg_path;
                share[i] += snaps[i].giant_share;
                hits[i] += snaps[i].disconnected ? 1.0 : 0.0;
                trial_share.push_back(snaps[i].giant_share);
            }
            trace.trial_giant_share.push_back(std::move(trial_share));
        }
        const double k = static_cast<double>(cfg.trials);
        for (std::size_t i = 0; i < points; ++i) {
            const double mean = sum[i] / k;
            trace.avg_path_lengths.push_back(mean);
            double se = 0.0;
            if (cfg.trials > 1) {
                const double var = std::max(0.0, (sum_sq[i] - k * mean * mean) / (k - 1.0));
                se = std::sqrt(var / k);
            }
            trace.stderr_path.push_back(se);
            trace.giant_share.push_back(share[i] / k);
            trace.disconnected_share.push_back(hits[i] / k);
        }
    }
    for (std::size_t i = 0; i < points; ++i) {
        if (trace.disconnected_share[i] > 0.5) {
            trace.disconnected_at = cfg.grid[i];
            break;
        }
    }
    return trace;
}

CriticalThreshold critical_threshold(const std::string& dapp, const std::vector<RemovalTrace>& traces)
{
    const RemovalTrace* chosen = nullptr;
    for (const auto& t : traces) {
        if (t.strategy == RemovalStrategy::BetweennessStatic) {
            chosen = &t;
            break;
        }
        if (t.strategy == RemovalStrategy::DegreeStatic && !chosen)
            chosen = &t;
    }
    if (!chosen)
        throw std::invalid_argument("critical threshold needs a targeted removal trace");
    CriticalThreshold ct;
    ct.dapp = dapp;
    if (chosen->disconnected_at) {
        ct.threshold_fraction = chosen->disconnected_at;
        const auto it = std::find(chosen->fractions.begin(), chosen->fractions.end(), *chosen->disconnected_at);
        const std::size_t k = chosen->removed[static_cast<std::size_t>(it - chosen->fractions.begin())];
        ct.removed_nodes.assign(chosen->removal_order.begin(),
                                chosen->removal_order.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return ct;
}

} // namespace dappnet
