#pragma once

#include "dappnet/call_record.hpp"
#include "dappnet/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dappnet {

/// Function-by-contract call counts. Rows are qualified function labels
/// `Contract::function`, columns are target contract labels; both sorted.
struct BipartiteCallMatrix {
    std::vector<std::string> functions;
    std::vector<std::string> contracts;
    // (row, column) -> count, only entries >= 1 are stored.
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts;

    std::uint64_t at(std::size_t row, std::size_t col) const;
    std::vector<std::uint64_t> row_sums() const;
    std::vector<std::uint64_t> column_sums() const;
    bool empty() const { return functions.empty(); }
};

enum class SizeClass { Small, Medium, Large };

std::string to_string(SizeClass size);

/// Contract interaction network. Edge weight counts records with that
/// (source, target) pair. Declared contracts without records appear as
/// isolated nodes. Sentinel targets become the node `None` when included.
WeightedDigraph build_contract_graph(std::span<const CallRecord> records, bool include_sentinel = true,
                                     std::span<const std::string> declared_contracts = {});

BipartiteCallMatrix build_bipartite(std::span<const CallRecord> records, bool include_sentinel = true);

/// Probabilistic-spreading projection onto the function layer:
/// weight(f1 -> f2) = sum_c M[f1,c]/s_f1 * M[f2,c]/t_c with s the row and t
/// the column sums. Zero weights are omitted; self-edges are kept.
WeightedDigraph project_functions(const BipartiteCallMatrix& m);

/// 1..23 Small, 24..45 Medium, 46+ Large. Throws std::invalid_argument for 0.
SizeClass classify_size(std::size_t n_contracts);

/// Distinct qualified source functions over distinct source contracts.
/// Throws std::invalid_argument when there are no records.
double function_contract_ratio(std::span<const CallRecord> records);

/// Square adjacency matrix with a label header row and column.
void write_adjacency_csv(std::ostream& out, const WeightedDigraph& g, int decimals = -1);
void write_bipartite_csv(std::ostream& out, const BipartiteCallMatrix& m);

} // namespace dappnet
