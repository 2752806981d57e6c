#pragma once

#include "dappnet/resilience.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dappnet {

struct SmallWorldPoint {
    std::string name;
    double real_avg_path = 0.0;
    double random_avg_path = 0.0;
};

/// Inputs for the static charts. Every section is optional; an empty one
/// skips its chart.
struct ChartData {
    std::string title;
    std::vector<std::pair<std::string, std::map<std::size_t, std::size_t>>> degree_histograms;
    std::vector<double> densities;
    std::vector<std::pair<std::string, double>> selfloop_ratios;
    // Maximal-clique size -> count divided by the dApp's contract count.
    std::vector<std::pair<std::string, std::map<std::size_t, double>>> clique_histograms;
    std::vector<SmallWorldPoint> small_world;
    std::vector<RemovalTrace> traces;
};

struct ChartOutput {
    std::vector<std::pair<std::string, std::string>> files; // file name, SVG text
    std::vector<std::string> notices;
};

/// Degree PDF (log-log), density PDF, self-loop ratio bars, clique size
/// bars, small-world scatter (filled square real, cross random) and removal
/// traces (orange random, purple targeted, cross where the trace
/// disconnects). Output bytes depend only on the input.
ChartOutput render_charts(const ChartData& data);

} // namespace dappnet
