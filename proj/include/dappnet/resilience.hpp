#pragma once

#include "dappnet/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dappnet {

enum class RemovalStrategy { BetweennessStatic, DegreeStatic, Random };

std::string to_string(RemovalStrategy s);
RemovalStrategy removal_strategy_from_string(const std::string& s);

enum class DisconnectionRule {
    // Largest piece below giant_share of survivors, or a second piece with
    // at least two nodes.
    GiantShareOrSecondPiece,
    // Any split into two or more pieces.
    AnySplit,
};

std::string to_string(DisconnectionRule r);
DisconnectionRule disconnection_rule_from_string(const std::string& s);

/// 0, 0.01, ..., 0.20
std::vector<double> default_removal_grid();

struct RemovalConfig {
    std::vector<double> grid = default_removal_grid();
    std::size_t trials = 100; // random strategy only
    std::uint64_t seed = 0;
    DisconnectionRule rule = DisconnectionRule::GiantShareOrSecondPiece;
    double giant_share = 0.9;

    void validate() const;
};

/// Nodes removed at grid fraction f: floor(f n), with a small allowance for
/// binary fractions such as 0.07 * 100.
std::size_t removal_count(double fraction, std::size_t n);

struct RemovalTrace {
    RemovalStrategy strategy = RemovalStrategy::BetweennessStatic;
    std::vector<double> fractions;
    std::vector<std::size_t> removed;        // floor(f n) per grid point
    std::vector<double> avg_path_lengths;    // largest surviving piece; trial mean for random
    std::vector<double> stderr_path;         // across trials; 0 for targeted
    std::vector<double> giant_share;         // largest piece / survivors; trial mean for random
    std::vector<double> disconnected_share;  // share of trials meeting the rule (0 or 1 when targeted)
    std::optional<double> disconnected_at;   // random: first point where most trials meet the rule
    std::vector<std::string> removal_order;  // targeted only: labels by rank
    std::vector<std::vector<double>> trial_giant_share; // random only: [trial][grid point]
    std::size_t trials = 0;
    std::uint64_t seed = 0;
};

/// Removes the top floor(f n) nodes of a ranking computed once on the
/// intact component (ties by label), or a fresh uniform order per trial for
/// the random strategy, and measures the largest surviving piece on the
/// undirected simple view. Throws std::invalid_argument for an empty or
/// disconnected component or an invalid grid.
RemovalTrace removal_experiment(const WeightedDigraph& component, RemovalStrategy strategy,
                                const RemovalConfig& cfg);

struct CriticalThreshold {
    std::string dapp;
    std::optional<double> threshold_fraction;
    std::vector<std::string> removed_nodes;
};

/// Threshold from the betweenness-static trace (else the first targeted
/// one). Throws std::invalid_argument when no targeted trace is given.
CriticalThreshold critical_threshold(const std::string& dapp, const std::vector<RemovalTrace>& traces);

} // namespace dappnet
